"""
Integration tests: every basis element of every operator space satisfies its
defining identity at all pairs of F_5^n.
"""

import sys
from pathlib import Path

import pytest

# Add the parent directory to the Python path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from leibalg.catalog_io import get_algebra
from leibalg.exceptions import PreconditionError
from leibalg.operator_spaces import SpaceBundle, gender_witness, qder_witness
from leibalg.utils.finite_field import (
    OPERATOR_KINDS,
    check_operator_identity_mod_p,
    pointwise_image_check,
)

P = 5
ALGEBRAS = ["L1", "L2", "N2b", "N2c"]


def witnesses_for(g, kind, d):
    if kind == "qder":
        return (qder_witness(g, d),)
    if kind == "gender":
        return gender_witness(g, d)
    return ()


@pytest.mark.integration
@pytest.mark.slow
@pytest.mark.parametrize("name", ALGEBRAS)
@pytest.mark.parametrize("kind", OPERATOR_KINDS)
def test_identity_holds_mod_5(name, kind):
    """Test each basis element of a space against its identity over F_5."""
    g = get_algebra(name)
    bundle = SpaceBundle(g)
    which = kind.replace("_", "-")

    if kind == "ider" and name == "L1":
        with pytest.raises(PreconditionError):
            bundle.space(which)
        return

    for d in bundle.space(which).basis:
        witnesses = witnesses_for(g, kind, d)
        assert all(w is not None for w in witnesses), d.to_strings()
        assert check_operator_identity_mod_p(g, kind, d, P, witnesses) is None, d.to_strings()
        if kind == "der_c":
            assert pointwise_image_check(g, d, P) is None, d.to_strings()
