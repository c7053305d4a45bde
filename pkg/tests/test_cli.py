import argparse
import json
import math
import subprocess
import sys

import pytest

from ncdeform import basis, bridge, poisson, projective, reps, rewrite
from ncdeform.cli import REGISTRY, build_parser, run

# every check the library offers; each must be reachable from exactly one subcommand
LIBRARY_CHECKS = [
    rewrite.normal_form, rewrite.check_confluence,
    basis.to_basis, basis.product_law_check, basis.cocycle_check,
    basis.casimir_reduce, basis.lambda_reconstruction,
    reps.relation_residuals, reps.casimir_residual, reps.centrality_residuals,
    reps.hermiticity_residuals, reps.lambda_reconstruct, reps.nf_consistency, reps.fit_mu,
    reps.scaling_torus, reps.scaling_sphere,
    bridge.phi_relation_residuals, bridge.phi_consistency, bridge.intertwine_check,
    bridge.phi_inverse_roundtrip, bridge.independence_evidence, bridge.spectral_check,
    projective.relation_residuals, projective.act_nf_consistency, projective.derivative_check,
    projective.radicand_minimum, projective.leibniz_table, projective.curvature_check,
    poisson.poisson_bracket,
]

FAST = {
    "rep torus": ["--check", "--count", "10"],
    "rep sphere": ["--check"],
    "phi residuals": ["--count", "10"],
    "phi independence": ["--theta", "1/11"],
    "module relations": ["--seeds", "2", "--points", "50"],
    "module leibniz": ["--seeds", "2", "--points", "50"],
    "module curvature": ["--seeds", "2", "--points", "50"],
    "normal-form": ["--expr", "W W* L"],
    "basis-product": ["--range", "2"],
}


def leaf_paths(parser, prefix=()):
    subs = [a for a in parser._actions if isinstance(a, argparse._SubParsersAction)]
    if not subs:
        return [" ".join(prefix)]
    out = []
    for name, child in subs[0].choices.items():
        out += leaf_paths(child, prefix + (name,))
    return out


def invoke(argv, capsys):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_registry_covers_every_subcommand_once():
    assert sorted(leaf_paths(build_parser())) == sorted(REGISTRY)
    for check in LIBRARY_CHECKS:
        homes = [path for path, fns in REGISTRY.items() if check in fns]
        assert len(homes) == 1, (check.__name__, homes)
    registered = [fn for fns in REGISTRY.values() for fn in fns]
    assert sorted(f.__qualname__ for f in registered) == sorted(f.__qualname__ for f in LIBRARY_CHECKS)


@pytest.mark.parametrize("path", sorted(REGISTRY))
def test_every_subcommand_passes_at_defaults(path, capsys):
    code, out, _ = invoke(path.split() + FAST.get(path, []) + ["--format", "json"], capsys)
    report = json.loads(out)
    assert code == 0 and report["pass"] is True
    assert report["schema"] == 1 and report["command"] == path


def test_confluence_example(capsys):
    code, out, _ = invoke(["confluence", "--theta", "1/5", "--mu", "2", "--backend", "exact"], capsys)
    report = json.loads(out)["result"]
    assert code == 0 and report["count"] == 12 and all(a["pass"] for a in report["ambiguities"])


def test_normal_form_text(capsys):
    code, out, _ = invoke(["normal-form", "--expr", "W W* L", "--theta", "1/5", "--mu", "2"], capsys)
    assert code == 0 and out == "z*L^2 + mu*L + zbar*I\n"


def test_curvature_constant(capsys):
    code, out, _ = invoke(["module", "curvature", "--m", "1", "--n", "2", "--theta", "1/5", "--mu", "2"], capsys)
    result = json.loads(out)["result"]
    assert code == 0
    assert result["expected"]["im"] == pytest.approx(1 / (1.4 * math.pi))
    assert all(abs(r["constant"]["im"] - 1 / (1.4 * math.pi)) < 1e-12 for r in result["per_seed"])


@pytest.mark.parametrize(
    "argv",
    [["rep", "torus", "--check", "--count", "20", "--seed", "7"],
     ["module", "leibniz", "--seeds", "3", "--seed", "11"]],
)
def test_reports_are_byte_identical(argv, capsys):
    _, first, _ = invoke(argv, capsys)
    _, second, _ = invoke(argv, capsys)
    assert first == second


@pytest.mark.parametrize(
    "argv",
    [["casimir", "--printed"], ["module", "leibniz", "--printed", "--seeds", "1", "--points", "30"],
     ["rep", "torus", "--check", "--printed-cos", "--count", "5"]],
)
def test_failing_checks_exit_1(argv, capsys):
    assert invoke(argv, capsys)[0] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["normal-form", "--expr", "W +"],
        ["rep", "torus", "--theta", "1/3", "--mu", "1"],
        ["confluence", "--theta", "0.2", "--backend", "exact"],
        ["rep", "torus", "--theta", "0.2"],
        ["casimir", "--theta", "1/2"],
        ["confluence", "--format", "csv"],
        ["no-such-command"],
        ["phi"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, _, err = invoke(argv, capsys)
    assert code == 2 and err


def test_out_file_and_csv(tmp_path, capsys):
    target = tmp_path / "table.csv"
    code, out, _ = invoke(["scaling", "torus", "--format", "csv", "--out", str(target)], capsys)
    assert code == 0 and out == ""
    lines = target.read_text().splitlines()
    assert lines[0] == "eps,l,value,limit,abs_err" and len(lines) == 16


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ncdeform", "poisson", "--format", "text"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "poisson: PASS"
