from .lemmas import CheckContext
from .router import (
    CheckSpec,
    check_metadata,
    check_names,
    resolve_scope,
    run_check,
    run_checks,
    scope_names,
)

__all__ = [
    "CheckContext",
    "CheckSpec",
    "check_metadata",
    "check_names",
    "resolve_scope",
    "run_check",
    "run_checks",
    "scope_names",
]
