"""Core matrix-type tests: coordinates, norms, derivatives, commutator algebra."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magnus2.m2 import (M2C, M2R, commutator_reduce, conorm,
                        conorm_directional_derivative, d_disc, discriminants,
                        entries_of_skew, evaluate_reduction, evaluate_word,
                        is_conform_unitary, moment_mn,
                        norm_directional_derivative, norm_disc, op_norm,
                        signed_conorm, skew_of_entries, t_polar)

from conftest import rand_m2c, rand_m2r, to_np

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


class TestCoordinates:
    def test_basis_elements(self):
        assert skew_of_entries(1.0, 0.0, 0.0, 1.0) == M2R(1, 0, 0, 0)
        assert skew_of_entries(1.0, 0.0, 0.0, -1.0) == M2R(0, 0, 1, 0)
        assert skew_of_entries(0.0, -1.0, 1.0, 0.0) == M2R(0, 1, 0, 0)
        assert skew_of_entries(0.0, 1.0, 1.0, 0.0) == M2R(0, 0, 0, 1)

    @given(finite, finite, finite, finite)
    def test_entry_roundtrip(self, m11, m12, m21, m22):
        m = skew_of_entries(m11, m12, m21, m22)
        back = entries_of_skew(m)
        assert back == pytest.approx((m11, m12, m21, m22), abs=1e-9, rel=1e-12)

    def test_trace_det(self, rng):
        for _ in range(50):
            A = rand_m2r(rng, 2.0)
            npA = to_np(A).real
            assert A.trace == pytest.approx(np.trace(npA), rel=1e-14, abs=1e-14)
            assert A.det == pytest.approx(np.linalg.det(npA), rel=1e-12, abs=1e-12)

    def test_product_matches_numpy(self, rng):
        for _ in range(50):
            A, B = rand_m2r(rng), rand_m2r(rng)
            assert np.allclose(to_np(A @ B), to_np(A) @ to_np(B), atol=1e-13)
            C, D = rand_m2c(rng), rand_m2c(rng)
            assert np.allclose(to_np(C @ D), to_np(C) @ to_np(D), atol=1e-13)

    def test_adjoint(self, rng):
        A = rand_m2c(rng)
        assert np.allclose(to_np(A.H), to_np(A).conj().T)


class TestNorms:
    def test_norm_vs_svd(self, rng):
        for _ in range(200):
            A = rand_m2r(rng, 2.0)
            sv = np.linalg.svd(to_np(A).real, compute_uv=False)
            assert op_norm(A) == pytest.approx(sv[0], abs=1e-12)
            assert abs(signed_conorm(A)) == pytest.approx(sv[1], abs=1e-12)
            assert conorm(A) == pytest.approx(sv[1], abs=1e-12)

    def test_norm_complex_vs_svd(self, rng):
        for _ in range(200):
            A = rand_m2c(rng)
            sv = np.linalg.svd(to_np(A), compute_uv=False)
            assert op_norm(A) == pytest.approx(sv[0], abs=1e-12)
            assert conorm(A) == pytest.approx(sv[1], abs=1e-12)

    def test_norm_sampling_oracle(self, rng):
        # max ||A x|| over 1e4 unit vectors, refined by the top eigenvalue
        # of A*A; the refined oracle pins the norm to 1e-8, the raw sample
        # max is a lower bound
        for _ in range(10):
            A = rand_m2c(rng)
            npA = to_np(A)
            phis = rng.uniform(0, 2 * math.pi, (10_000, 2))
            psis = rng.uniform(0, 2 * math.pi, 10_000)
            ct = np.cos(phis[:, 0])
            stv = np.sin(phis[:, 0])
            xs = np.stack([ct, stv * np.exp(1j * psis)], axis=1)
            sample_max = np.max(np.linalg.norm(xs @ npA.T, axis=1))
            refined = math.sqrt(max(np.linalg.eigvalsh(npA.conj().T @ npA)))
            assert sample_max <= op_norm(A) + 1e-12
            assert sample_max >= op_norm(A) - 1e-2
            assert op_norm(A) == pytest.approx(refined, abs=1e-8)

    def test_signed_conorm_values(self):
        assert signed_conorm(M2R.ID) == 1.0
        assert signed_conorm(M2R.J) == -1.0
        assert signed_conorm(M2R(0, 0, 0, 0)) == 0.0

    def test_norm_times_conorm_is_det(self, rng):
        for _ in range(100):
            A = rand_m2r(rng, 3.0)
            assert op_norm(A) * signed_conorm(A) == pytest.approx(
                A.det, abs=1e-12 * max(1.0, abs(A.det)))

    def test_detrace_strictly_decreasing(self, rng):
        # ||A - t (trA/2) Id|| strictly decreasing on t in [0,1] for tr != 0
        for _ in range(20):
            A = rand_m2r(rng)
            if abs(A.ta) < 0.05:
                continue
            ts = np.linspace(0.0, 1.0, 11)
            vals = [op_norm(A - t * A.ta * M2R.ID) for t in ts]
            assert all(b < a for a, b in zip(vals, vals[1:]))


class TestDiscriminants:
    def test_d_disc_coordinates(self, rng):
        A = rand_m2r(rng)
        npA = to_np(A).real
        half = np.trace(npA) / 2
        assert d_disc(A) == pytest.approx(np.linalg.det(npA - half * np.eye(2)),
                                          abs=1e-12)

    def test_norm_disc_nonnegative_and_dexpsq(self, rng):
        for _ in range(100):
            A = rand_m2c(rng)
            assert norm_disc(A) >= -1e-12
            B = rand_m2r(rng)
            exact = 4.0 * (B.ta ** 2 + B.tb ** 2) * (B.tc ** 2 + B.td ** 2)
            assert norm_disc(B) == pytest.approx(exact, rel=1e-14, abs=1e-14)

    def test_norm_disc_zero_iff_conform_unitary(self, rng):
        rot = M2R(math.cos(0.7), math.sin(0.7), 0, 0)
        assert norm_disc(2.5 * rot) <= 1e-10
        assert is_conform_unitary(2.5 * rot)
        refl = M2R(0, 0, math.cos(0.3), math.sin(0.3))
        assert norm_disc(refl) <= 1e-10
        for _ in range(50):
            A = rand_m2c(rng)
            if norm_disc(A) < 1e-10 * op_norm(A) ** 4:
                assert is_conform_unitary(A) or op_norm(A) == 0.0

    def test_ddcomp_split(self, rng):
        # D_{A*A} = D_{(conj(trA) A + trA A*)/2} + D_{[A,A*]/2}
        for _ in range(100):
            A = rand_m2c(rng)
            sym = 0.5 * (A.trace.conjugate() * A + A.trace * A.H)
            com = 0.5 * A.commutator(A.H)
            lhs = d_disc(A.H @ A)
            assert lhs == pytest.approx(d_disc(sym) + d_disc(com), abs=1e-10)

    def test_normav_identity(self, rng):
        # tr(A*A) tr(A*v)/2 - det(A*)(trA trv - tr(Av)) = 2 T_{A*A, A*v}
        for _ in range(100):
            A, v = rand_m2c(rng), rand_m2c(rng)
            g, h = A.H @ A, A.H @ v
            lhs = g.trace * h.trace / 2.0 - A.det.conjugate() * (
                A.trace * v.trace - (A @ v).trace)
            assert abs(lhs - 2.0 * t_polar(g, h)) < 1e-10 * max(1.0, abs(lhs))

    def test_t_identities(self, rng):
        # T_{A,[A,v]} = 0, T_{A,[A,[A,v]]} = 0, T_{A,[v,[v,A]]} = 4(DA Dv - T^2)
        for make in (rand_m2r, rand_m2c):
            for _ in range(50):
                A, v = make(rng), make(rng)
                com = A.commutator(v)
                assert abs(t_polar(A, com)) < 1e-10
                assert abs(t_polar(A, A.commutator(com))) < 1e-10
                lhs = t_polar(A, v.commutator(v.commutator(A)))
                rhs = 4.0 * (d_disc(A) * d_disc(v) - t_polar(A, v) ** 2)
                assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(rhs))

    def test_bundle(self, rng):
        A, v = rand_m2c(rng), rand_m2c(rng)
        d = discriminants(A, v)
        assert d.d_a == d_disc(A)
        assert d.t_av == t_polar(A, v)
        assert d.norm_disc == norm_disc(A)


class TestDirectionalDerivatives:
    def test_at_zero(self, rng):
        v = rand_m2r(rng)
        assert norm_directional_derivative(M2R(0, 0, 0, 0), v) == op_norm(v)

    def test_at_identity(self, rng):
        v = rand_m2r(rng)
        want = v.ta + math.hypot(v.tc, v.td)
        assert norm_directional_derivative(M2R.ID, v) == pytest.approx(want)

    def test_generic_vs_central_difference(self, rng):
        h = 1e-6
        done = 0
        while done < 100:
            A, v = rand_m2r(rng, 1.5), rand_m2r(rng)
            if norm_disc(A) < 1e-4:
                continue
            fd = (op_norm(A + h * v) - op_norm(A + (-h) * v)) / (2 * h)
            assert norm_directional_derivative(A, v) == pytest.approx(fd, abs=1e-5)
            fdc = (signed_conorm(A + h * v) - signed_conorm(A + (-h) * v)) / (2 * h)
            assert conorm_directional_derivative(A, v) == pytest.approx(fdc,
                                                                        abs=1e-5)
            done += 1

    def test_complex_vs_central_difference(self, rng):
        h = 1e-6
        done = 0
        while done < 100:
            A, v = rand_m2c(rng, 1.5), rand_m2c(rng)
            if norm_disc(A) < 1e-4:
                continue
            fd = (op_norm(A + h * v) - op_norm(A + (-h) * v)) / (2 * h)
            assert norm_directional_derivative(A, v) == pytest.approx(fd, abs=1e-5)
            done += 1

    def test_conform_unitary_case(self, rng):
        # conical point: the derivative is one-sided (not linear in v)
        A = 1.7 * M2R(math.cos(0.4), math.sin(0.4), 0, 0)
        for _ in range(10):
            v = rand_m2r(rng)
            h = 1e-7
            fd = (op_norm(A + h * v) - op_norm(A)) / h
            assert norm_directional_derivative(A, v) == pytest.approx(fd,
                                                                      abs=1e-5)

    def test_ambiguous_band_raises(self):
        # J~ + 1e-7 Id: -D_{A*A} ~ 4e-14 sits inside the 1e-10 relative band
        # while A is 1e-7 away from conform-orthogonal: ambiguous
        A = M2R(1e-7, 0, 1.0, 0)
        with pytest.raises(ValueError):
            norm_directional_derivative(A, M2R.ID)
        with pytest.raises(ValueError):
            conorm_directional_derivative(A, M2R.ID)

    def test_dtrace_argmax_positive(self, rng):
        # D_{(trA) Id} ||M|| > 0 whenever tr A != 0
        for _ in range(100):
            A = rand_m2c(rng)
            if abs(A.trace) < 0.05 or norm_disc(A) < 1e-8:
                continue
            v = A.trace * M2C(1 + 0j, 0j, 0j, 0j)
            assert norm_directional_derivative(A, v) > 0.0


class TestMomentMN:
    def test_matches_gradient(self, rng):
        done = 0
        while done < 20:
            A = rand_m2c(rng, 1.2)
            if norm_disc(A) < 1e-6:
                continue
            MN = moment_mn(A)
            for _ in range(20):
                v = rand_m2c(rng)
                lhs = 0.5 * ((MN.H @ v).trace).real
                rhs = norm_directional_derivative(A, v)
                assert lhs == pytest.approx(rhs, abs=1e-6)
            done += 1

    def test_euler_identity(self, rng):
        done = 0
        while done < 50:
            A = rand_m2c(rng)
            if norm_disc(A) < 1e-6:
                continue
            MN = moment_mn(A)
            assert 0.5 * ((MN.H @ A).trace).real == pytest.approx(op_norm(A),
                                                                  abs=1e-9)
            done += 1

    def test_diagonal_example(self):
        A = M2C(1.5 + 0j, 0j, 0.5 + 0j, 0j)  # diag(2, 1)
        MN = moment_mn(A)
        # gradient of ||.|| at diag(2,1) is diag(1,0) -> moment diag(2,0)
        assert np.allclose(to_np(MN), np.diag([2.0, 0.0]), atol=1e-12)

    def test_degenerate_raises(self):
        rot = M2C(complex(math.cos(0.2)), complex(math.sin(0.2)), 0j, 0j)
        with pytest.raises(ValueError):
            moment_mn(rot)


WORDS = [
    ("A", "v"),
    ("A", ("A", "v")),
    ("v", ("v", "A")),
    ("A", ("A", ("A", "v"))),
    ("v", ("v", ("A", "v"))),
    ("A", ("v", ("A", "v"))),
    (("A", "v"), ("A", ("A", "v"))),
    (("v", ("v", "A")), ("A", ("A", "v"))),
    ("A", ("A", ("A", ("A", "v")))),
    ("v", ("A", ("v", ("A", "v")))),
]


class TestCommutatorReduce:
    def test_absorption_rules(self):
        e1, e2, e3 = commutator_reduce(("A", ("A", ("A", "v"))))
        assert e2 == {} and e3 == {}
        assert e1 == {(1, 0, 0): -4}
        e1, e2, e3 = commutator_reduce(("v", ("v", ("A", "v"))))
        assert e1 == {(0, 0, 1): -4} and not e2 and not e3
        e1, e2, e3 = commutator_reduce(("A", ("v", ("A", "v"))))
        assert e1 == {(0, 1, 0): 4} and not e2 and not e3

    @pytest.mark.parametrize("word", WORDS)
    def test_against_direct_evaluation(self, word, rng):
        red = commutator_reduce(word)
        for make in (rand_m2r, rand_m2c):
            for _ in range(50):
                A, v = make(rng), make(rng)
                direct = evaluate_word(word, A, v)
                reco = evaluate_reduction(red, A, v)
                assert direct.close_to(reco, 1e-10 * max(1.0, op_norm(direct)))

    def test_rejects_uncommutatored(self):
        with pytest.raises(ValueError):
            commutator_reduce("A")
        with pytest.raises(ValueError):
            commutator_reduce(("A", "A", "v"))
