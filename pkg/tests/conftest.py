import pytest

from prolate import ProlateContext, build_spectrum


@pytest.fixture(scope="session")
def spectra():
    """Session cache of built spectra, reusing the largest n_max per c."""
    cache = {}

    def get(c: float, n_max: int):
        have = cache.get(c)
        if have is None or have.context.n_max < n_max:
            have = build_spectrum(ProlateContext(c=float(c), n_max=n_max))
            cache[c] = have
        return have

    return get


@pytest.fixture(scope="session")
def pswf(spectra):
    """One built PswfFunction per (c, n)."""

    def get(c: float, n: int, n_max: int | None = None):
        return spectra(c, max(n, n_max or 0)).function(n)

    return get
