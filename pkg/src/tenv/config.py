"""Resource bounds and the error types shared by the library and the CLI."""
from __future__ import annotations

import os
from dataclasses import dataclass


class SchemaError(ValueError):
    """Malformed input; carries a JSON-pointer-like location."""

    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


class ResourceBoundError(RuntimeError):
    """An enumeration would exceed a configured bound."""

    def __init__(self, what, requested, limit, key):
        super().__init__(
            f"{what} needs {requested}, above the bound {limit}; "
            f"raise {key} (environment) or the matching CLI flag to allow it"
        )
        self.what, self.requested, self.limit, self.key = what, requested, limit, key


class ContractViolation(AssertionError):
    """A checked identity failed, or an operation was called outside its contract."""


@dataclass(frozen=True)
class Bounds:
    max_setsize: int = 8  # largest set whose partitions we enumerate
    max_qdim: int = 2 ** 12  # largest q^d whose subspaces we enumerate
    max_psize: int = 10 ** 4  # largest explicit finite set (functor values, hom sets)

    @classmethod
    def from_env(cls, environ=None):
        env = os.environ if environ is None else environ
        kw = {}
        for field, key in (
            ("max_setsize", "TENV_MAX_SETSIZE"),
            ("max_qdim", "TENV_MAX_QDIM"),
            ("max_psize", "TENV_MAX_PSIZE"),
        ):
            if key in env:
                try:
                    kw[field] = int(env[key])
                except ValueError:
                    raise SchemaError(f"{key} must be an integer, got {env[key]!r}")
        return cls(**kw)

    def check(self, field, requested, what):
        limit = getattr(self, field)
        if requested > limit:
            raise ResourceBoundError(what, requested, limit, "TENV_" + field.upper())
