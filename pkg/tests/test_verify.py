import ast
import json
import math
from pathlib import Path

import pytest
from _oracles import ramanujan_tau

from maass_poincare import verify
from maass_poincare.arith import S_MATRIX, T_MATRIX
from maass_poincare.coeffs import Truncation
from maass_poincare.numerics import incomplete_gamma

TESTS = Path(__file__).parent


def test_tau_oracle_independent():
    assert [verify.tau_oracle(n) for n in range(1, 13)] == [ramanujan_tau(n) for n in range(1, 13)]
    with pytest.raises(ValueError):
        verify.tau_oracle(51)


def test_sample_points_manifest():
    pts = verify.sample_points()
    assert pts["version"] == 1
    assert pts["upper"] == [0.13 + 0.8j, 0.2 + 1.3j, -0.4 + 1.1j]
    assert pts["lower"] == [p.conjugate() for p in pts["upper"]]


def _test_names(path):
    tree = ast.parse(path.read_text())
    return {node.name for node in tree.body if isinstance(node, ast.FunctionDef)}


def test_coverage_manifest_references_resolve():
    for entry in verify.coverage_manifest()["identities"]:
        assert entry["covered_by"], entry["identity"]
        for ref in entry["covered_by"]:
            if ref.startswith("verify."):
                assert callable(getattr(verify, ref.split(".", 1)[1]))
            else:
                file, _, name = ref.partition("::")
                path = TESTS.parent / file
                assert path.exists(), ref
                if name:
                    assert name in _test_names(path), ref


@pytest.mark.parametrize("name", verify.SUITES)
def test_every_suite_passes_at_defaults(name):
    report = verify.run_suite(name)
    assert report.passed, report.summary()
    assert report.residuals
    json.dumps(report.to_dict())


def test_unknown_suite():
    with pytest.raises(ValueError):
        verify.run_suite("nope")


def test_report_serialization():
    report = verify.check_modularity(-2, 1, 1, T_MATRIX, [0.2 + 1.3j], Truncation(c_max=50, n_max=20))
    d = report.to_dict()
    assert d["residuals"][0]["point"] == {"re": 0.2, "im": 1.3}
    assert isinstance(d["passed"], bool) and d["check_name"] == "modularity"
    assert "PASS" in report.summary()


def test_modularity_rejects_matrix_outside_level():
    with pytest.raises(ValueError):
        verify.check_modularity(-2, 1, 2, S_MATRIX, [0.2 + 1.3j])


# negative controls: the harness must be able to fail


def test_zero_space_fails_for_weight_12():
    assert not verify.check_zero_space((12,)).passed


def test_laplacian_detects_non_harmonic_function():
    report = verify.check_laplacian(-2, 1, 1, 0.2 + 1.3j, func=lambda z: abs(z) ** 2 * z)
    assert not report.passed


def test_h_distinguishes_weights():
    # H for k = -2 agrees with its own expansion but not with the one for k = -4
    report = verify.check_theorem1_upper(-2, 1, 1, [0.2 + 1.3j], Truncation(c_max=10),
                                         reference_trunc=Truncation(c_max=100, n_max=20))
    assert report.passed
    mixed = verify._residual(0.2 + 1.3j, verify.continuation.H(-2, 1, 1, 0.2 + 1.3j, Truncation(c_max=10)),
                             verify.forms.eval_maass(verify.coeffs.maass_expansion(-4, 1, 1, 20, Truncation(c_max=100)), 0.2 + 1.3j))
    assert mixed.rel_err > 1e-2


def test_xi_term_constant_matches_finite_difference():
    k, n, tau, h = -2, 1, 0.1 + 0.9j, 1e-6

    def g(z):
        return incomplete_gamma(1 - k, 4 * math.pi * n * z.imag) * complex(math.e) ** (-2j * math.pi * n * z) / math.factorial(-k)

    dbar = 0.5 * ((g(tau + h) - g(tau - h)) / (2 * h) + 1j * (g(tau + 1j * h) - g(tau - 1j * h)) / (2 * h))
    xi = 2j * tau.imag ** k * dbar.conjugate()
    q = complex(math.e) ** (2j * math.pi * n * tau)
    assert xi == pytest.approx(verify.xi_term_constant(k, n) * q, rel=1e-6)


@pytest.mark.parametrize("k,m", [(-2, 2), (-10, 1), (-10, 2)])
def test_operator_identities_other_weights(k, m):
    # weight 12 has a cusp form, so both sides are far from the cancellation floor
    assert verify.check_bol_identity(k, m, 1, range(1, 7)).passed
    assert verify.check_xi_identity(k, m, 1, range(1, 7)).passed
