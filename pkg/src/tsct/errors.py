"""Shared exception types."""

from __future__ import annotations


class UsageError(ValueError):
    """Invalid run parameters (bad q, bad ell, bad flag combination)."""


class CertificationError(AssertionError):
    """An exact cross-check failed; carries enough context to locate it."""

    def __init__(self, message: str, **context):
        self.context = dict(context)
        if context:
            detail = ", ".join(f"{k}={v!r}" for k, v in sorted(context.items()))
            message = f"{message} [{detail}]"
        super().__init__(message)


class NotIntegralError(ValueError):
    """A value required to be integral (or ell-integral) is not."""
