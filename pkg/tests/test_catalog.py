import json

import pytest

from tanglekit.catalog import (
    CatalogError,
    get_entry,
    reproduce_tables,
)
from tanglekit.diagram import close_numerator, from_expression, validate
from tanglekit.expr import CatalogHint, evaluate, parse_expr
from tanglekit.fraction import frac_normalize


def F(p, q=1):
    return frac_normalize(p, q)


EXPECTED_NAMES = {
    "5_1", "6_1", "6_2", "6_3", "6_4",
    "7_1", "7_2", "7_3", "7_4", "7_5", "7_6", "7_7", "7_8", "7_9",
    "7_10", "7_11", "7_12", "7_13", "7_14", "7_15", "7_16", "7_17", "7_18",
}


class TestLoad:
    def test_all_entries_present(self, catalog_entries):
        assert {e.name for e in catalog_entries} == EXPECTED_NAMES

    def test_all_diagrams_valid(self, catalog_entries):
        for e in catalog_entries:
            assert validate(e.diagram) is None, e.name

    def test_crossing_counts(self, catalog_entries):
        for e in catalog_entries:
            stated = int(e.name.split("_")[0])
            if e.expression is None:
                assert e.diagram.crossing_count == stated, e.name
            else:
                # expression realizations may carry extra crossings
                assert e.diagram.crossing_count >= stated, e.name

    def test_every_entry_essential(self, catalog_entries):
        assert all(e.essential for e in catalog_entries)

    def test_expression_agreement_gate(self, catalog_entries):
        from tanglekit.diagram import close_denominator
        from tanglekit.quandle import determinant, monochromatic_report

        for e in catalog_entries:
            if e.expression is None:
                continue
            realized = from_expression(e.expression)
            assert determinant(close_numerator(e.diagram)) == \
                determinant(close_numerator(realized))
            assert determinant(close_denominator(e.diagram)) == \
                determinant(close_denominator(realized))
            ra = monochromatic_report(e.diagram)
            rb = monochromatic_report(realized)
            assert ra.offending_moduli == rb.offending_moduli

    def test_missing_entry(self, catalog_entries):
        with pytest.raises(CatalogError):
            get_entry("9_99", catalog_entries)


class TestClassify:
    def test_6_3_unlinkable(self, classified):
        v = classified["6_3"].verdict
        assert v.unlinkable.is_yes and v.unlinkable.closure == F(0)
        assert v.splittable.is_yes and v.unknottable.is_no

    def test_5_1_unknottable(self, classified):
        v = classified["5_1"].verdict
        assert v.unknottable.is_yes and v.unknottable.closure == F(-1)
        assert v.unlinkable.is_no and v.splittable.is_no

    def test_7_13_all_no_with_evidence(self, classified):
        r = classified["7_13"]
        v = r.verdict
        assert v.unknottable.is_no and v.unlinkable.is_no and v.splittable.is_no
        evidence = "\n".join(r.evidence)
        assert "splitting candidate [-3/4]" in evidence
        assert "knotted" in evidence

    def test_montesinos_entries_all_no(self, classified):
        for name in ("6_2", "6_4", "7_1", "7_3", "7_4", "7_6", "7_8",
                     "7_9", "7_10", "7_11", "7_12", "7_16"):
            v = classified[name].verdict
            assert v.unknottable.is_no, name
            assert v.unlinkable.is_no, name
            assert v.splittable.is_no, name

    def test_no_unknown_verdicts(self, classified):
        for name, r in classified.items():
            for key in ("unknottable", "unlinkable", "splittable"):
                assert getattr(r.verdict, key).status != "unknown", (name, key)

    def test_double_derivation_of_coloring_entries(self, classified):
        for name in ("6_2", "7_16"):
            evidence = "\n".join(classified[name].evidence)
            assert "coloring route agrees" in evidence, name

    def test_knotted_string_gate(self, classified):
        r = classified["7_13"]
        assert "knotted" in (r.verdict.unlinkable.reason or "") or \
            any("knotted" in line for line in r.evidence)


class TestUnknownIsLegal:
    def test_synthetic_entry_with_no_applicable_criterion(self):
        # a rational tangle diagram whose unknotting closures all fall
        # outside the sweep: the driver must answer unknown with a log,
        # while the splitting candidate route still certifies the unlink
        from tanglekit.catalog import CatalogEntry, classify
        from tanglekit.diagram import from_rational

        entry = CatalogEntry(
            name="synthetic_7_5ths", diagram=from_rational(F(7, 5)),
            expression=None, essential=False, expected={})
        r = classify(entry)
        assert r.verdict.unknottable.status == "unknown"
        assert r.verdict.unlinkable.is_yes
        assert r.verdict.unlinkable.closure == F(-7, 5)
        assert any("no unknotting closure found" in line for line in r.evidence)


class TestSubtanglePruning:
    def test_7_16_via_reference_to_6_2(self, catalog_entries, classified):
        hints = {"6_2": CatalogHint(verdict=classified["6_2"].verdict,
                                    essential=True)}
        r = evaluate(parse_expr("@6_2 * [-2]"), hints)
        assert r.verdict.unknottable.is_no
        assert r.verdict.unlinkable.is_no


class TestReproduce:
    def test_tables_reproduced(self, catalog_entries):
        report = reproduce_tables(catalog_entries)
        assert report.ok, report.text()

    def test_report_schema(self, catalog_entries):
        report = reproduce_tables(catalog_entries)
        data = json.loads(json.dumps(report.data))
        assert data["schema"] == "tanglekit-report/1"
        assert data["unknottable"] == {
            "5_1": "-1", "6_1": "-1", "7_2": "-1",
            "7_5": "0", "7_7": "0", "7_14": "-1"}
        assert data["unlinkable"] == {"6_3": "0"}
        assert data["splittable"] == {"6_3": "0"}
        assert set(data["verdicts"]) == EXPECTED_NAMES

    def test_diff_detection(self, catalog_entries):
        # corrupt one expected set entry and check the diff machinery
        import tanglekit.catalog as cat

        broken = dict(cat.EXPECTED_UNKNOTTABLE)
        broken["6_2"] = F(0)
        orig = cat.EXPECTED_UNKNOTTABLE
        cat.EXPECTED_UNKNOTTABLE = broken
        try:
            report = reproduce_tables(catalog_entries)
            assert not report.ok
            assert any("6_2" in d for d in report.data["diffs"])
        finally:
            cat.EXPECTED_UNKNOTTABLE = orig
