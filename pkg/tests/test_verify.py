import pytest

from conehomeo.fixtures import f0, f2
from conehomeo.homeo import IdentityHomeo
from conehomeo.mutations import MUTATIONS, caught
from conehomeo.report import VerificationReport
from conehomeo.swindle import build_lemma1_homeo
from conehomeo.verify import lemma1_samples, verify_generic_homeo, verify_lemma1


@pytest.mark.parametrize("fixture", [f0, f2])
def test_lemma1_suite_passes(fixture):
    phi, psi = fixture()
    rep = verify_lemma1(phi, psi, build_lemma1_homeo(phi, psi), lemma1_samples(phi, psi, m=1, n_random=10))
    assert rep.passed, rep.to_text()
    assert {c.name for c in rep.checks} >= {"vertex", "support", "round_trip", "overlap_agreement",
                                            "partition", "region_images", "basis_mapping"}


def test_identity_passes_generic():
    phi, _ = f0()
    pts = lemma1_samples(phi, phi, m=1, n_random=0)
    assert verify_generic_homeo(IdentityHomeo(phi.ambient), lambda x: False, pts).passed


@pytest.mark.parametrize("mutation", MUTATIONS, ids=lambda m: m.name)
def test_mutation_is_caught(mutation):
    rep, result = mutation.run()
    assert caught(result), rep.to_text()


def test_every_named_check_has_a_mutation():
    targets = {m.target for m in MUTATIONS}
    assert {"vertex", "support", "round_trip", "vertex_neighborhoods", "overlap_agreement", "partition",
            "region_images", "basis_mapping", "agree_below", "interlaced", "chart_round_trip",
            "agree_below_3", "onto", "continuity", "properness", "deterministic"} <= targets


def test_report_formats():
    rep = VerificationReport("demo", seed=3)
    rep.add("good", 4)
    rep.add("bad", 2, "(1/2, 0)")
    text = rep.to_text()
    assert "PASS good [4 samples]" in text and "FAIL bad [2 samples] counterexample: (1/2, 0)" in text
    assert rep.to_dict()["passed"] is False and rep.failures[0].name == "bad"
