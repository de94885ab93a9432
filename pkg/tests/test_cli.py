import json

from sl3f7 import cli
from sl3f7.classify import KNOWN_REPRESENTATIVES, ClassLabel
from sl3f7.matrix3 import format_matrix, mat_inv, mat_mul, mat_pow
from sl3f7.schema import validate_document

M0_TEXT = "0 1 3; 0 0 1; 1 0 0"
M2_TEXT = "0 2 -1; 0 0 2; 2 0 0"
M0 = KNOWN_REPRESENTATIVES[ClassLabel(0, 4)]


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    doc = json.loads(out)
    validate_document(doc)
    return doc


class TestClassify:
    def test_m0_table(self, capsys):
        code, out, _ = run(capsys, "classify", M0_TEXT)
        assert code == 0
        assert "label:      [0,4]" in out
        assert "order:      57" in out
        assert "psl label:  [0,1]" in out

    def test_m2_json(self, capsys):
        doc = run_json(capsys, "classify", M2_TEXT, "--format", "json")
        assert doc["label"] == [0, 2]
        assert doc["order"] == 19
        assert doc["eigenfree"] is True

    def test_identity_not_eigenfree(self, capsys):
        doc = run_json(capsys, "classify", "1 0 0; 0 1 0; 0 0 1", "--format", "json")
        assert doc["eigenfree"] is False
        assert doc["order"] == 1
        assert doc["label"] is None

    def test_parse_error_exit_2(self, capsys):
        code, _, err = run(capsys, "classify", "1 2 3; 4 5 6")
        assert code == 2
        assert "error" in err

    def test_not_sl3_exit_3(self, capsys):
        code, _, err = run(capsys, "classify", "2 0 0; 0 1 0; 0 0 1")
        assert code == 3

    def test_file_input(self, capsys, tmp_path):
        path = tmp_path / "m.txt"
        path.write_text(M0_TEXT + "\n")
        code, out, _ = run(capsys, "classify", "--file", str(path))
        assert code == 0
        assert "[0,4]" in out


class TestPowerTable:
    def test_reproduces_trace_column(self, capsys):
        code, out, _ = run(capsys, "power-table", M2_TEXT, "--limit", "20")
        assert code == 0
        lines = [l for l in out.splitlines() if l and l.lstrip()[0].isdigit()]
        traces = [int(l.split()[-2] if "(" not in l else l.split()[-3]) for l in lines]
        assert traces == [0, 3, 3, 1, 4, 1, 0, 2, 1, 3, 0, 2, 3, 3, 3, 4, 4, 2, 3, 0]

    def test_csv_header(self, capsys):
        code, out, _ = run(capsys, "power-table", M2_TEXT, "--limit", "3", "--format", "csv")
        assert code == 0
        assert out.startswith("k,matrix,trace,label\n")

    def test_signed_display_matches_input(self, capsys):
        code, out, _ = run(capsys, "power-table", M2_TEXT, "--limit", "1",
                           "--format", "csv", "--signed")
        assert code == 0
        assert "0 2 -1; 0 0 2; 2 0 0" in out

    def test_limit_zero_usage_error(self, capsys):
        code, _, err = run(capsys, "power-table", M2_TEXT, "--limit", "0")
        assert code == 2

    def test_json(self, capsys):
        doc = run_json(capsys, "power-table", M2_TEXT, "--limit", "19", "--format", "json")
        assert doc["rows"][18]["note"] == "identity"
        assert doc["rows"][18]["class"] == "[3,3]"


class TestScanningCommands:
    def test_census_json(self, capsys):
        doc = run_json(capsys, "census", "--format", "json")
        assert doc["group_order"] == 5_630_688
        assert doc["eigenfree_total"] == 1_778_112

    def test_census_csv_by_trace(self, capsys):
        code, out, _ = run(capsys, "census", "--format", "csv", "--by", "trace")
        assert code == 0
        assert out.startswith("trace,count\n")
        assert "0,296352" in out

    def test_centralizer_json(self, capsys):
        doc = run_json(capsys, "centralizer", M0_TEXT, "--format", "json")
        assert doc["size"] == 57
        assert doc["is_cyclic"] is True

    def test_class_size_json(self, capsys):
        doc = run_json(capsys, "class-size", M0_TEXT, "--format", "json")
        assert doc["class_size"] == 98_784
        assert doc["centralizer_size"] == 57

    def test_sylow_json(self, capsys):
        doc = run_json(capsys, "sylow", "--format", "json")
        assert doc["count"] == 32_928
        assert doc["order19_elements"] == 592_704

    def test_normalizer_json(self, capsys):
        doc = run_json(capsys, "normalizer", M2_TEXT, "--format", "json")
        assert doc["size"] == 171
        assert doc["index_over_subgroup"] == 9

    def test_thread_count_gives_byte_identical_output(self, capsys):
        _, out1, _ = run(capsys, "census", "--format", "json", "--threads", "1")
        _, out4, _ = run(capsys, "census", "--format", "json", "--threads", "4")
        assert out1 == out4


class TestSubgroupCommands:
    def test_parabolic(self, capsys):
        doc = run_json(capsys, "parabolic", "--format", "json")
        assert doc["size"] == 98_784
        assert doc["index"] == 57

    def test_closure_of_small_generator(self, capsys):
        doc = run_json(capsys, "closure", M2_TEXT, "--format", "json")
        assert doc["size"] == 19

    def test_reduce_json(self, capsys):
        doc = run_json(capsys, "reduce", M0_TEXT, "--target", "Y", "--format", "json")
        assert doc["verified"] is True
        assert doc["target"] == "0 1 0; 0 0 1; 1 0 0"

    def test_reduce_inside_h_exit_3(self, capsys):
        code, _, err = run(capsys, "reduce", "1 0 1; 0 -1 -1; 0 1 0", "--target", "Y")
        assert code == 3

    def test_reduce_table_has_product_formula(self, capsys):
        code, out, _ = run(capsys, "reduce", M0_TEXT, "--target", "Z")
        assert code == 0
        assert "product: Z =" in out
        assert "verified: True" in out


class TestLabelCommands:
    def test_labels_table(self, capsys):
        code, out, _ = run(capsys, "labels")
        assert code == 0
        assert out.count("order 19") == 6
        assert out.count("order 57") == 12

    def test_labels_csv(self, capsys):
        code, out, _ = run(capsys, "labels", "--format", "csv")
        assert code == 0
        assert out.startswith("i,j,order,psl_i,psl_j,representative\n")
        assert len(out.strip().splitlines()) == 19

    def test_labels_json(self, capsys):
        doc = run_json(capsys, "labels", "--format", "json")
        assert len(doc["labels"]) == 18

    def test_commuting_reps_json(self, capsys):
        doc = run_json(capsys, "commuting-reps", "--format", "json")
        assert len(doc["reps"]) == 18
        assert doc["reps"][2] == {"label": [0, 4], "matrix": "0 1 3; 0 0 1; 1 0 0"}


class TestSimconj:
    @staticmethod
    def write_tuple(path, matrices):
        path.write_text("\n".join(format_matrix(m) for m in matrices) + "\n")

    def test_conjugated_fixture_equivalent(self, capsys, tmp_path):
        g = KNOWN_REPRESENTATIVES[ClassLabel(1, 0)]
        t1 = (M0, mat_pow(M0, 5))
        t2 = tuple(mat_mul(mat_mul(g, m), mat_inv(g)) for m in t1)
        f1, f2 = tmp_path / "a.txt", tmp_path / "b.txt"
        self.write_tuple(f1, t1)
        self.write_tuple(f2, t2)
        code, out, _ = run(capsys, "simconj", str(f1), str(f2))
        assert code == 0
        doc = json.loads(out)
        validate_document(doc)
        assert doc["equivalent"] is True
        assert doc["witness"] is not None

    def test_exponent_mismatch_not_equivalent(self, capsys, tmp_path):
        f1, f2 = tmp_path / "a.txt", tmp_path / "b.txt"
        self.write_tuple(f1, (M0, mat_pow(M0, 5)))
        self.write_tuple(f2, (M0, mat_pow(M0, 10)))
        code, out, _ = run(capsys, "simconj", str(f1), str(f2))
        assert code == 0
        doc = json.loads(out)
        assert doc["equivalent"] is False
        assert doc["certificate"]

    def test_non_commuting_exit_4(self, capsys, tmp_path):
        f1, f2 = tmp_path / "a.txt", tmp_path / "b.txt"
        self.write_tuple(f1, (M0, KNOWN_REPRESENTATIVES[ClassLabel(1, 3)]))
        self.write_tuple(f2, (M0, mat_pow(M0, 2)))
        code, _, err = run(capsys, "simconj", str(f1), str(f2))
        assert code == 4

    def test_length_mismatch_exit_2(self, capsys, tmp_path):
        f1, f2 = tmp_path / "a.txt", tmp_path / "b.txt"
        self.write_tuple(f1, (M0,))
        self.write_tuple(f2, (M0, mat_pow(M0, 2)))
        code, _, err = run(capsys, "simconj", str(f1), str(f2))
        assert code == 2

    def test_all_eigen_exit_3(self, capsys, tmp_path):
        f1, f2 = tmp_path / "a.txt", tmp_path / "b.txt"
        f1.write_text("1 1 0; 0 1 0; 0 0 1\n1 2 0; 0 1 0; 0 0 1\n")
        f2.write_text("1 1 0; 0 1 0; 0 0 1\n1 2 0; 0 1 0; 0 0 1\n")
        code, _, err = run(capsys, "simconj", str(f1), str(f2))
        assert code == 3


class TestVerify:
    def test_only_filter_runs_fast_checks(self, capsys):
        code, out, _ = run(capsys, "verify", "--only", "psl")
        assert code == 0
        assert "psl-collapse" in out
        assert "PASS" in out

    def test_report_byte_identical_across_threads(self, capsys):
        code1, out1, _ = run(capsys, "verify", "--only", "group-order", "--threads", "1")
        code4, out4, _ = run(capsys, "verify", "--only", "group-order", "--threads", "4")
        assert code1 == code4 == 0
        assert out1 == out4

    def test_failing_suite_would_exit_1(self, capsys, monkeypatch):
        from sl3f7 import verify as verify_mod

        broken = verify_mod.Check(99, "always-fails", lambda full, threads: (False, "boom"))
        monkeypatch.setattr(verify_mod, "CHECKS", (broken,))
        code, out, _ = run(capsys, "verify", "--only", "always")
        assert code == 1
        assert "FAIL" in out
