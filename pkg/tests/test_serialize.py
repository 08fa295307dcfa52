import json
import random
from fractions import Fraction as F

import pytest

import ordermotion as om
from ordermotion import serialize
from _support import rand_pair, rand_tuple


class TestPointTupleJson:
    def test_round_trip(self):
        rng = random.Random(1)
        P = rand_tuple(rng, 5, 2)
        obj = serialize.point_tuple_to_obj(P)
        assert serialize.point_tuple_from_obj(obj) == P

    def test_rationals_as_lowest_terms_strings(self):
        P = om.point_tuple([[F(2, 4), F(3)], [1, 0], [0, 1]])
        obj = serialize.point_tuple_to_obj(P)
        assert obj["points"][0] == ["1/2", "3"]

    def test_accepts_plain_integers(self):
        obj = {"d": 2, "points": [[0, 0], [1, 0], ["1/2", "2/3"]]}
        P = serialize.point_tuple_from_obj(obj)
        assert P.points[2] == (F(1, 2), F(2, 3))

    def test_rejects_floats(self):
        with pytest.raises(ValueError):
            serialize.point_tuple_from_obj({"d": 2, "points": [[0.5, 1]]})

    def test_rejects_zero_denominator(self):
        with pytest.raises(ValueError):
            serialize.point_tuple_from_obj({"d": 2, "points": [["1/0", 1]]})

    def test_file_round_trip(self, tmp_path):
        rng = random.Random(2)
        P = rand_tuple(rng, 4, 3)
        path = tmp_path / "tuple.json"
        serialize.dump_point_tuple(P, path)
        assert serialize.load_point_tuple(path) == P


class TestOrderTypeJson:
    def test_signs_in_colex_order(self):
        P = om.point_tuple([[0, 0], [4, 0], [2, 4], [2, 1]])
        t = om.order_type(P)
        obj = serialize.order_type_to_obj(t)
        assert obj == {"n": 4, "d": 2, "signs": list(t.signs)}
        for rank, subset in enumerate(om.colex_subsets(4, 3)):
            assert obj["signs"][rank] == t.sign_of(subset)

    def test_round_trip(self):
        rng = random.Random(3)
        t = om.order_type(rand_tuple(rng, 5, 2))
        assert serialize.order_type_from_obj(serialize.order_type_to_obj(t)) == t


class TestPolynomialJson:
    def test_round_trip(self):
        p = om.RationalPolynomial.from_coeffs([F(1, 3), -2, F(7, 5)])
        obj = serialize.polynomial_to_obj(p)
        assert obj == {"coeffs": ["1/3", "-2", "7/5"]}
        assert serialize.polynomial_from_obj(obj) == p


class TestPlanSerialization:
    def test_plan_json_and_csv(self):
        rng = random.Random(4)
        A, B = rand_pair(rng, 4, 2)
        plan = om.linear_cost(A, B)
        obj = serialize.plan_to_obj(plan)
        assert obj["total"] == plan.total
        assert [tuple(e["subset"]) for e in obj["ledger"]] == list(om.colex_subsets(4, 3))
        csv_text = serialize.ledger_csv(plan)
        lines = csv_text.strip().splitlines()
        assert lines[0] == "i0,i1,i2,flips"
        assert len(lines) == 1 + len(plan.ledger)
        assert sum(int(line.rsplit(",", 1)[1]) for line in lines[1:]) == plan.total

    def test_segments_carry_kind_tags(self):
        rng = random.Random(5)
        A, B = rand_pair(rng, 4, 2)
        plan = om.plan_even_d(A, B)
        obj = serialize.plan_to_obj(plan)
        kinds = {seg["kind"] for seg in obj["segments"]}
        assert kinds <= {"linear", "zero-cost-scaling", "zero-cost-rotation"}

    def test_json_dumps_stable(self):
        rng = random.Random(6)
        A, B = rand_pair(rng, 4, 2)
        plan = om.linear_cost(A, B)
        text1 = serialize.json_dumps(serialize.plan_to_obj(plan))
        text2 = serialize.json_dumps(serialize.plan_to_obj(plan))
        assert text1 == text2
        assert text1.endswith("\n")
        json.loads(text1)


class TestReportSerialization:
    def test_decay_report(self):
        A = om.point_tuple([["2", "5/2"], ["-7/2", "0"], ["4", "15/4"]])
        B = om.point_tuple([["9/4", "3/4"], ["7/2", "3/2"], ["-3/4", "4"]])
        report = om.coefficient_decay_report(A.points, B.points, F(1, 1000), [1, 1])
        obj = serialize.decay_report_to_obj(report)
        assert obj["eta"] == "1/1000"
        assert len(obj["per_index_error"]) == 3
        assert float(F(obj["max_error"])) == obj["max_error_float"]

    def test_blowup_objects(self):
        Q = om.point_tuple([[0, 0], [4, 0], [2, 4]])
        res = om.build_blowup(Q, Q, m=2)
        obj = serialize.blowup_to_obj(res)
        assert obj["certificate"] == 16
        assert obj["asymptotic_constant"] == "2/27"
        rebuilt = serialize.point_tuple_from_obj(obj["P"])
        assert rebuilt == res.P
        report = om.verify_blowup(res, Q, Q, samples=5, seed=0)
        rep_obj = serialize.blowup_report_to_obj(report)
        assert rep_obj["all_pass"] is True

    def test_measure_report(self):
        A = om.point_tuple([[0, 0], [2, 0], [1, 2]])
        B = om.point_tuple([[0, 0], [3, 1], [1, 3]])
        est = om.estimate_measure(A, B, n_samples=50, seed=3)
        obj = serialize.measure_to_obj(est)
        assert obj["seed"] == 3 and obj["n_samples"] == 50
