import itertools
import random

import pytest

from ggptheta.corpus import exhaustive, random_parameter
from ggptheta.dsl import parse_rep
from ggptheta.errors import NonGenericError, UsageError
from ggptheta.lfactors import epsilon_half
from ggptheta.localfield import OrthSpaceLabel, all_classes, hilbert_symbol, square_class
from ggptheta.packets import FULL, PLUS, ComponentGroup, EnhancedParam
from ggptheta.thetaggp import (
    admissible_twist,
    bessel_recipe,
    fj_recipe,
    mp_change_psi,
    mp_from_theta_odd,
    mp_theta_odd,
    prasad_p1,
    prasad_p2,
    recipe_value,
    verify_adjoint_factorization,
    verify_fj_seesaw,
)
from ggptheta.wdalg import MP, SO_EVEN, SP, Family, Kind, character, det, is_epsilon_invariant


def R(text, p=5):
    return parse_rep(text, p)


def _brute_recipe(m_part, n_part):
    # Expands the tensor product and reads det values off Hilbert symbols.
    minus_one = square_class(m_part.p, -1)
    eps = epsilon_half(m_part * n_part).to_sign()
    dm = hilbert_symbol(minus_one, det(m_part).d) ** (n_part.dim // 2)
    dn = hilbert_symbol(minus_one, det(n_part).d) ** (m_part.dim // 2)
    return eps * dm * dn


def test_recipe_at_identity_is_one():
    pair = bessel_recipe(R("chi(2)*sp(2)+sp(2)"), R("chi(5)+chi(10)"))
    assert pair.chi_on_M(0) == 1 and pair.chi_on_N(0) == 1


@pytest.mark.parametrize("p", (3, 5))
def test_bessel_recipe_matches_expanded_epsilon(p):
    ms = exhaustive(p, MP, 4)[:25]
    ns = exhaustive(p, SO_EVEN, 4)[:25]
    for phi_m, phi_n in itertools.product(ms, ns):
        pair = bessel_recipe(phi_m, phi_n)
        gm, gn = pair.chi_on_M.group, pair.chi_on_N.group
        for a in gm.elements(FULL):
            assert pair.chi_on_M(a) == _brute_recipe(gm.minus_eigenspace(a), phi_n)
        for b in gn.elements(PLUS):
            assert pair.chi_on_N(b) == _brute_recipe(phi_m, gn.minus_eigenspace(b))


def test_recipe_value_on_known_pair():
    # sp(2) (x) (sp(3) + 1) = sp(4) + 2 sp(2), each sp(n) contributing (-1)^(n-1).
    assert recipe_value(R("sp(2)"), R("sp(3)+1")) == -1
    assert recipe_value(R("sp(2)"), R("sp(2)+sp(2)")) == 1
    assert recipe_value(R("sp(2)"), R("chi(2)+chi(2)")) == 1
    assert recipe_value(R("sp(2)"), R("1+1")) == 1
    assert recipe_value(R("chi(3)*sp(2)", 3), R("1+1", 3)) == 1
    assert recipe_value(R("sp(2)", 3), R("chi(3)+chi(6)", 3)) == _brute_recipe(R("sp(2)", 3), R("chi(3)+chi(6)", 3))


def test_fj_recipe_lives_on_plus_group():
    pair = fj_recipe(R("chi(2)*sp(2)+sp(2)"), R("chi(2)+chi(5)+chi(10)"))
    assert pair.chi_on_N.domain == PLUS
    assert pair.chi_on_N.group == ComponentGroup.for_sign(R("chi(2)+chi(5)+chi(10)"), 1)
    with pytest.raises(UsageError):
        fj_recipe(R("sp(2)"), R("chi(2)+chi(5)+1"))


@pytest.mark.parametrize("p,dim", ((2, 2), (3, 4), (5, 4)))
def test_mp_cocycle_and_round_trip(p, dim):
    for phi in exhaustive(p, MP, dim):
        g = ComponentGroup.of(phi, MP)
        for values in itertools.product((1, -1), repeat=g.rank):
            e = EnhancedParam.make(phi, MP, values)
            assert mp_change_psi(e, 1) == e
            for c1, c2 in itertools.product(all_classes(p), repeat=2):
                assert mp_change_psi(mp_change_psi(e, c1), c2) == mp_change_psi(e, c1 * c2)
            for c in all_classes(p):
                for dual_side in (False, True):
                    lifted = mp_theta_odd(e, c, dual_side)
                    assert lifted.kind == Kind(Family.SO_ODD, c)
                    assert mp_from_theta_odd(lifted, c, dual_side) == e


def test_mp_theta_twists_by_c():
    e = EnhancedParam.make(R("sp(2)", 3), MP)
    assert mp_theta_odd(e, 3).phi == R("chi(3)*sp(2)", 3)
    assert mp_theta_odd(e, 3, dual_side=True).phi == R("chi(-3)*sp(2)", 3)
    with pytest.raises(UsageError):
        mp_change_psi(EnhancedParam.make(R("sp(3)"), SP), 2)


def test_prasad_p1_example():
    phi = R("chi(2)+chi(5)+chi(10)")
    part = prasad_p1(EnhancedParam.make(phi, SP, [-1, 1]), 2)
    assert part.phi == R("2*1+chi(5)+chi(10)")
    assert part.count == 1
    part = prasad_p1(EnhancedParam.make(R("sp(3)+2*chi(2)*sp(2)"), SP), 5)
    assert part.phi == R("1+chi(5)*sp(3)+2*chi(10)*sp(2)")
    assert part.count == 2
    assert len(set(part.extensions)) == 2


def test_prasad_p1_with_space_label():
    e = EnhancedParam.make(R("chi(2)+chi(5)+chi(10)"), SP)
    v = OrthSpaceLabel(4, square_class(5, 2))
    assert prasad_p1(e, v) == prasad_p1(e, 2)
    with pytest.raises(UsageError):
        prasad_p1(e, OrthSpaceLabel(6, square_class(5, 2)))


def test_variant_selection_uses_central_sign():
    e = EnhancedParam.make(R("1+chi(2)*sp(3)+chi(2)"), SP, [-1, 1])
    part = prasad_p1(e, 5)
    assert part.count == 2
    picked = {v: part.select(v) for v in (1, -1)}
    z = part.ambient.central_element()
    for v, chosen in picked.items():
        assert chosen is not None and chosen.eta(z) == v


@pytest.mark.parametrize("p", (3, 5))
def test_prasad_counts(p):
    for phi in exhaustive(p, SP, 5):
        g = ComponentGroup.of(phi, SP)
        e = EnhancedParam.make(phi, SP, [-1] * len(g.generators(PLUS)))
        for d in all_classes(p):
            expected = 1 if character(p, d) in phi else 2
            assert prasad_p1(e, d).count == expected
    for d in all_classes(p):
        kind = Kind(Family.SO_EVEN, d)
        for phi2 in exhaustive(p, kind, 4):
            e2 = EnhancedParam.make(phi2, kind)
            expected = 2 if is_epsilon_invariant(phi2) and character(p) not in phi2 else 1
            assert prasad_p2(e2).count == expected


def test_adjoint_factorization():
    assert verify_adjoint_factorization(R("chi(2)+chi(5)+chi(10)"), 5)
    rng = random.Random(7)
    for _ in range(100):
        p = rng.choice((2, 3, 5, 7))
        phi = random_parameter(rng, p, SP, 9, tempered=False)
        assert verify_adjoint_factorization(phi, rng.choice(all_classes(p)))


def test_seesaw_examples():
    report = verify_fj_seesaw(R("chi(2)*sp(2)+sp(2)"), R("chi(2)+chi(5)+chi(10)"), 5)
    assert report.passed and report.witness is None
    assert len(report.rows) == 4 * 4
    other = verify_fj_seesaw(R("chi(2)*sp(2)+sp(2)"), R("chi(2)+chi(5)+chi(10)"), 2)
    assert other.table() == report.table()
    vacuous = verify_fj_seesaw(R("op(a)+op(~a)"), R("1"), 1)
    assert vacuous.passed and len(vacuous.rows) == 1


def test_seesaw_guards():
    with pytest.raises(NonGenericError):
        verify_fj_seesaw(R("t(1/2)+t(-1/2)"), R("1"), 2)
    with pytest.raises(UsageError):
        verify_fj_seesaw(R("t(1/4)+t(-1/4)"), R("1"), 2)
    assert verify_fj_seesaw(R("t(1/4)+t(-1/4)"), R("1"), 2, allow_nontempered=True).passed
    assert admissible_twist(R("chi(2)+chi(5)+chi(10)"), 2)
    assert not admissible_twist(R("chi(2)*t(1)+1+chi(2)*t(-1)"), 2)
    with pytest.raises(NonGenericError):
        verify_fj_seesaw(R("sp(2)"), R("chi(2)*t(1)+1+chi(2)*t(-1)"), 2, allow_nontempered=True)


@pytest.mark.parametrize("p", (3, 5))
def test_seesaw_random_pairs(p):
    rng = random.Random(p)
    for _ in range(15):
        phi_m = random_parameter(rng, p, MP, 6)
        phi_n = random_parameter(rng, p, SP, 5)
        tables = []
        for d in all_classes(p):
            if admissible_twist(phi_n, d):
                report = verify_fj_seesaw(phi_m, phi_n, d)
                assert report.passed, report.witness
                tables.append(report.table())
        assert all(t == tables[0] for t in tables)
