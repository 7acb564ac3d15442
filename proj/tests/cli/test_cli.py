"""End-to-end checks of the dunklqm tool: exit codes, example values, schemas, determinism."""
import cmath
import json
import math
import os
import pathlib
import subprocess
import sys
import tempfile
import unittest

import jsonschema
from referencing import Registry, Resource

BIN = None
SCHEMAS = None


def run(*args):
    return subprocess.run([BIN, *map(str, args)], capture_output=True, text=True)


def bessel_i(order, x, terms=60):
    return sum((x / 2) ** (2 * k + order) / (math.factorial(k) * math.gamma(order + k + 1)) for k in range(terms))


def schema_validator(name):
    registry = Registry()
    for path in pathlib.Path(SCHEMAS).glob("*.json"):
        registry = registry.with_resource(path.name, Resource.from_contents(json.loads(path.read_text())))
    schema = json.loads((pathlib.Path(SCHEMAS) / name).read_text())
    return jsonschema.Draft202012Validator(schema, registry=registry)


def csv_rows(text):
    lines = text.strip().splitlines()
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


class Propagator(unittest.TestCase):
    def test_free_point_value(self):
        r = run("propagator", "--system", "free", "--nu", "0.5", "--tau", "1.0", "--xa", "1", "--xb", "1")
        self.assertEqual(r.returncode, 0, r.stderr)
        header, rows = csv_rows(r.stdout)
        self.assertEqual(header, ["x_a", "x_b", "re_K", "im_K"])
        self.assertEqual(len(rows), 1)
        expected = 0.5 * math.exp(-1.0) * (bessel_i(0, 1.0) + bessel_i(1, 1.0))
        self.assertAlmostEqual(float(rows[0][2]) / expected, 1.0, places=12)
        self.assertEqual(float(rows[0][3]), 0.0)
        self.assertRegex(rows[0][2], r"^-?\d\.\d{16}e[+-]\d{2,3}$")

    def test_harmonic_real_time_grid_matches_mehler(self):
        r = run("propagator", "--system", "harmonic", "--nu", "0", "--time", "0.5")
        self.assertEqual(r.returncode, 0, r.stderr)
        _, rows = csv_rows(r.stdout)
        self.assertEqual(len(rows), 40 * 40)
        t = 0.5
        worst = 0.0
        for xa, xb, re, im in rows[::37]:
            xa, xb = float(xa), float(xb)
            k = cmath.sqrt(1 / (2j * math.pi * math.sin(t))) * cmath.exp(
                1j * ((xa * xa + xb * xb) * math.cos(t) - 2 * xa * xb) / (2 * math.sin(t)))
            worst = max(worst, abs(complex(float(re), float(im)) - k) / abs(k))
        self.assertLess(worst, 1e-9)

    def test_missing_nu_is_a_config_error(self):
        r = run("propagator", "--tau", "1")
        self.assertEqual(r.returncode, 2)
        self.assertIn("--nu", r.stderr)
        self.assertIn("Usage", r.stderr)

    def test_time_flags_are_exclusive(self):
        r = run("propagator", "--nu", "0.3", "--time", "1", "--tau", "1")
        self.assertEqual(r.returncode, 2)

    def test_missing_time_is_a_config_error(self):
        self.assertEqual(run("propagator", "--nu", "0.3").returncode, 2)

    def test_caustic_is_a_numerical_failure(self):
        r = run("propagator", "--nu", "0.3", "--time", repr(math.pi), "--xa", "1", "--xb", "0.5")
        self.assertEqual(r.returncode, 3)
        self.assertIn("caustic", r.stderr)

    def test_json_output_matches_schema(self):
        r = run("propagator", "--nu", "0.25", "--tau", "0.7", "--xa", "-1", "0.5", "--xb", "2", "--format", "json")
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        schema_validator("propagator.schema.json").validate(doc)
        self.assertEqual([(row["x_a"], row["x_b"]) for row in doc["rows"]], [(-1.0, 2.0), (0.5, 2.0)])


class Spectrum(unittest.TestCase):
    def energies(self, *args):
        r = run("spectrum", *args)
        self.assertEqual(r.returncode, 0, r.stderr)
        header, rows = csv_rows(r.stdout)
        self.assertEqual(header, ["n", "parity", "E_exact", "E_grid", "abs_dE"])
        return rows

    def test_nu_half(self):
        rows = self.energies("--nu", "0.5", "--nmax", "4")
        self.assertEqual([float(r[2]) for r in rows], [float(k) for k in range(1, 11)])
        self.assertEqual([r[1] for r in rows[:4]], ["1", "-1", "1", "-1"])
        self.assertTrue(all(float(r[4]) < 1e-4 for r in rows))

    def test_nu_zero(self):
        rows = self.energies("--nu", "0", "--nmax", "3")
        self.assertEqual([float(r[2]) for r in rows[:4]], [0.5, 1.5, 2.5, 3.5])

    def test_strict(self):
        self.assertEqual(run("spectrum", "--nu", "0.25", "--nmax", "2", "--strict", "--tol", "1e-4").returncode, 0)
        r = run("spectrum", "--nu", "0.25", "--nmax", "2", "--strict", "--tol", "1e-14")
        self.assertEqual(r.returncode, 3)

    def test_free_system_is_rejected(self):
        self.assertEqual(run("spectrum", "--nu", "0.5", "--system", "free").returncode, 2)

    def test_json_schema_and_determinism(self):
        with tempfile.TemporaryDirectory() as d:
            a, b = os.path.join(d, "a.json"), os.path.join(d, "b.json")
            for path in (a, b):
                r = run("spectrum", "--nu", "1.5", "--nmax", "3", "--grid-M", "600", "--format", "json", "--out", path)
                self.assertEqual(r.returncode, 0, r.stderr)
            self.assertEqual(pathlib.Path(a).read_bytes(), pathlib.Path(b).read_bytes())
            schema_validator("spectrum.schema.json").validate(json.loads(pathlib.Path(a).read_text()))


class Wavefunctions(unittest.TestCase):
    def test_ground_state_at_origin_and_schema(self):
        r = run("wavefunctions", "--nu", "0", "--nmax", "1", "--xa", "0.5")
        self.assertEqual(r.returncode, 0, r.stderr)
        header, rows = csv_rows(r.stdout)
        self.assertEqual(header, ["x", "n", "parity", "psi"])
        self.assertEqual(len(rows), 4)
        psi0 = math.pi ** -0.25 * math.exp(-0.125)
        self.assertAlmostEqual(float(rows[0][3]), psi0, places=14)
        r = run("wavefunctions", "--nu", "0.7", "--nmax", "2", "--grid-L", "3", "--grid-M", "10", "--format", "json")
        doc = json.loads(r.stdout)
        schema_validator("wavefunctions.schema.json").validate(doc)
        self.assertEqual(len(doc["rows"]), 20 * 2 * 3)

    def test_odd_grid_count_is_rejected(self):
        self.assertEqual(run("wavefunctions", "--nu", "0.7", "--grid-M", "11").returncode, 2)


class Validate(unittest.TestCase):
    def test_only_filter(self):
        r = run("validate", "--only", "chapman-kolmogorov", "--format", "json")
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        schema_validator("validate.schema.json").validate(doc)
        self.assertEqual([c["check"] for c in doc["checks"]], ["chapman-kolmogorov"])

    def test_unknown_check(self):
        self.assertEqual(run("validate", "--only", "no-such-check").returncode, 2)

    def test_full_suite(self):
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "report.json")
            r = run("validate", "--format", "json", "--out", path)
            self.assertEqual(r.returncode, 0, r.stderr)
            doc = json.loads(pathlib.Path(path).read_text())
            schema_validator("validate.schema.json").validate(doc)
            self.assertTrue(doc["passed"])
            self.assertGreaterEqual(len(doc["checks"]), 20)


class ConfigFile(unittest.TestCase):
    def write(self, d, text):
        path = os.path.join(d, "cfg.json")
        pathlib.Path(path).write_text(text)
        return path

    def test_corrupted_config(self):
        with tempfile.TemporaryDirectory() as d:
            self.assertEqual(run("validate", "--config", self.write(d, "{ not json")).returncode, 2)
            self.assertEqual(run("spectrum", "--config", self.write(d, '{"nu": 0.5, "bogus": 1}')).returncode, 2)
            self.assertEqual(run("spectrum", "--config", self.write(d, '[1, 2]')).returncode, 2)
            self.assertEqual(run("spectrum", "--config", os.path.join(d, "missing.json")).returncode, 2)

    def test_file_overrides_flags(self):
        with tempfile.TemporaryDirectory() as d:
            cfg = {"nu": 0.5, "system": "free", "tau": 1.0, "xa": [1.0], "xb": 1.0}
            schema_validator("config.schema.json").validate(cfg)
            path = self.write(d, json.dumps(cfg))
            r = run("propagator", "--nu", "2.0", "--system", "harmonic", "--config", path)
            self.assertEqual(r.returncode, 0, r.stderr)
            _, rows = csv_rows(r.stdout)
            self.assertAlmostEqual(float(rows[0][2]), 0.33683501147, places=10)

    def test_config_time_replaces_flag_tau(self):
        with tempfile.TemporaryDirectory() as d:
            path = self.write(d, json.dumps({"time": 0.5}))
            r = run("propagator", "--nu", "0", "--tau", "1", "--xa", "1", "--xb", "1", "--config", path)
            self.assertEqual(r.returncode, 0, r.stderr)
            _, rows = csv_rows(r.stdout)
            self.assertNotEqual(float(rows[0][3]), 0.0)


if __name__ == "__main__":
    BIN, SCHEMAS = sys.argv[1], sys.argv[2]
    unittest.main(argv=[sys.argv[0], "-v"])
