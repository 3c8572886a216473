import pytest

from metalg import catalog
from metalg.cohomology import get_enveloping, get_kernel_mu, get_regular_bimodule


BATTERY_NAMES = list(catalog.BATTERY)


@pytest.fixture(scope="session")
def battery():
    """name -> algebra for the full standing battery (built once)."""
    return {name: catalog.algebra(name) for name in BATTERY_NAMES}


def coefficient_modules(alg, with_jj2=False):
    """The declared coefficient-module battery for one algebra."""
    mods = {
        "A": get_regular_bimodule(alg),
        "Ae": get_enveloping(alg).as_bimodule(),
        "kermu": get_kernel_mu(alg)[1],
    }
    if with_jj2:
        from metalg.algebra import sub_bimodule, quotient_bimodule, subspace_product
        from metalg.decomposition import radical
        from metalg.linalg import Subspace

        rad = radical(alg)
        if rad.subspace.dim:
            jbim = sub_bimodule(mods["A"], rad.subspace, name="J")
            j2 = subspace_product(alg, rad.subspace, rad.subspace)
            j2_in_j = Subspace.from_vectors(
                alg.field, rad.subspace.dim,
                [rad.subspace.coords(b) for b in j2.basis])
            mods["jj2"] = quotient_bimodule(jbim, j2_in_j, name="J/J2")
    return mods
