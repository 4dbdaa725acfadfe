from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Config:
    """Search caps and tolerances. Exceeding a cap yields "inconclusive"."""

    working_depth: int = 32  # letters compared when testing point equality
    max_depth: int = 4096  # hard cap on lazily generated letters
    gamma_cap: int = 64  # γ-orbit iterations per development
    gamma_len_factor: int = 16  # γ word-length cap = factor * N * max |ψ^k(a)|
    k_max: int | None = None  # defaults to 4N - 4
    max_power_length: int = 200_000  # stop raising k once ψ^k gets this long
    tol: float = 1e-9
    verify: bool = True  # run the numeric cross-validation after success
    verify_max_len: int = 10
    verify_depth: int = 200_000

    def k_bound(self, n: int) -> int:
        return self.k_max if self.k_max is not None else max(1, 4 * n - 4)


DEFAULT = Config()
