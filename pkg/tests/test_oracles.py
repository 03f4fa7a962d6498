"""Independent-route cross checks: each oracle re-derives a quantity with
code that shares nothing with the library path it validates."""

import random

from dirsets.field import make_field
from dirsets.geometry import (AffinePointSet, check_line_congruence,
                              direction_modulus, directions_of, line_profile)
from dirsets.redei import specialized_tail, tail_power
from dirsets import polys as P
from conftest import random_point_set


def test_gf9_matches_mod_polynomial_model(gf9):
    # independent model: pairs (c0, c1) with x^2 = -1
    def omul(a, b):
        a0, a1 = a % 3, a // 3
        b0, b1 = b % 3, b // 3
        return (a0 * b0 - a1 * b1) % 3 + 3 * ((a0 * b1 + a1 * b0) % 3)

    def oadd(a, b):
        return (a % 3 + b % 3) % 3 + 3 * ((a // 3 + b // 3) % 3)

    for a in range(9):
        for b in range(9):
            assert gf9.mul(a, b) == omul(a, b)
            assert gf9.add(a, b) == oadd(a, b)


def test_gf8_matches_carryless_model(gf8):
    assert gf8.modulus == (1, 0, 1, 1)

    def omul(a, b):
        prod = 0
        for i in range(3):
            if (a >> i) & 1:
                prod ^= b << i
        for i in (5, 4, 3):
            if (prod >> i) & 1:
                prod ^= 0b1101 << (i - 3)
        return prod & 0b111

    for a in range(8):
        for b in range(8):
            assert gf8.mul(a, b) == omul(a, b)


def test_direction_modulus_matches_literal_definition(gf8, gf9):
    rng = random.Random(4242)
    for F in (gf8, gf9):
        p, q = F.p, F.q
        for _ in range(40):
            U = random_point_set(F, rng, rng.randint(1, q + 2))
            for y in range(q + 1):
                counts = line_profile(U, y)
                best, power = 1, p
                while power <= q:
                    if all(c % power == 0 for c in counts):
                        best = power
                    power *= p
                assert direction_modulus(U, y) == best


def test_tail_modulus_matches_downward_scan(gf8, gf9):
    rng = random.Random(77)
    for F in (gf8, gf9):
        q, p = F.q, F.p
        for _ in range(60):
            U = random_point_set(F, rng, rng.randint(2, q))
            for y in directions_of(U).affine():
                t_y = specialized_tail(U, y)
                got, root = tail_power(t_y, field=F)
                if len(t_y) <= 1:
                    assert got == q
                    continue
                deg = len(t_y) - 1
                tau = 1
                while tau * p <= deg:
                    tau *= p
                expect = None
                while tau >= 1:
                    if all(i % tau == 0 for i, c in enumerate(t_y) if c):
                        r = P.p_frob_root(F, t_y, tau)
                        if not P.in_power_basis(r, p):
                            expect = tau
                            break
                    tau //= p
                assert got == expect
                assert P.p_frob_pow(F, root, got) == t_y


def test_line_congruence_matches_explicit_lines(gf4):
    rng = random.Random(11)
    for _ in range(40):
        U = random_point_set(gf4, rng, rng.randint(2, 8))
        dirs = directions_of(U)
        rep = check_line_congruence(U)
        if not rep.applicable:
            continue
        m = rep.modulus
        brute_fail = 0
        for slope in range(5):
            for c in range(4):
                if slope < 4:
                    line = {(x, gf4.add(gf4.mul(slope, x), c)) for x in range(4)}
                else:
                    line = {(c, y) for y in range(4)}
                total = len(line & U.points) + (1 if slope in dirs.determined else 0)
                if total % m not in (0, 1):
                    brute_fail += 1
        if len(dirs.determined) % m not in (0, 1):
            brute_fail += 1
        assert brute_fail == len(rep.failures)
