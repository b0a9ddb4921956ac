from ._core import (
    CatalogMiss,
    ConsistencyError,
    ConstraintViolation,
    DomainRestriction,
    HausdorffError,
    IntegrandError,
    InvalidInput,
    IoError,
    OriginExcluded,
    SingularMatrix,
    apply,
    check_hypotheses,
    commutator,
    constant,
    det_bounds,
    determinant,
    field_presets,
    g_alpha_lambda,
    kernel_presets,
    norm,
    op_norm,
    shell_cover,
    shell_index,
    symbol_presets,
    testfn_presets,
    verify,
    verify_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
