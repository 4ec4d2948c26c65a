"""End-to-end tests of the chaosbench command-line tool.

Usage: python3 test_cli.py <path-to-chaosbench> <schema-dir>
"""

import json
import os
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

import jsonschema

CLI = None
SCHEMAS = None


def run(*args, env=None, check_code=0):
    full_env = dict(os.environ)
    full_env.pop("CHAOSBENCH_DATA", None)
    if env:
        full_env.update(env)
    proc = subprocess.run([CLI, *args], capture_output=True, text=True, env=full_env)
    if check_code is not None and proc.returncode != check_code:
        raise AssertionError(
            f"{' '.join(args)} exited {proc.returncode}, expected {check_code}\nstdout:\n{proc.stdout}\nstderr:\n{proc.stderr}"
        )
    return proc


def run_json(schema, *args, **kw):
    proc = run("--json", *args, **kw)
    doc = json.loads(proc.stdout)
    jsonschema.validate(doc, json.loads((SCHEMAS / f"{schema}.schema.json").read_text()))
    return doc


class CliTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls._tmp = tempfile.TemporaryDirectory()
        cls.tmp = Path(cls._tmp.name)
        cls.data = cls.tmp / "data"
        run("characterize", "Lorenz", "Torus", "--replicates", "2", "--out", str(cls.data))

    @classmethod
    def tearDownClass(cls):
        cls._tmp.cleanup()

    def test_list(self):
        doc = run_json("list", "list")
        names = [s["name"] for s in doc["systems"]]
        self.assertEqual(names, sorted(names))
        self.assertIn("Lorenz", names)
        self.assertGreaterEqual(len(names), 20)
        table = run("list").stdout
        self.assertIn("Lorenz", table)

    def test_info(self):
        doc = run_json("info", "info", "Lorenz")
        self.assertEqual(doc["dimension"], 3)
        self.assertEqual(doc["parameters"]["rho"], 28.0)

    def test_unknown_system_exits_1(self):
        proc = run("--json", "info", "NoSuch", check_code=1)
        err = json.loads(proc.stderr.strip().splitlines()[-1])
        jsonschema.validate(err, json.loads((SCHEMAS / "error.schema.json").read_text()))
        self.assertEqual(err["error"]["type"], "validation")
        run("characterize", "NoSuch", check_code=1)

    def test_usage_errors(self):
        run("frobnicate", check_code=1)
        run("bench", "forecast", "--granularity", "medium", "--out", str(self.tmp / "g"), check_code=1)
        run("integrate", "Lorenz", "--ic", "1,2", check_code=1)
        self.assertIn("integrate", run("--help").stdout)

    def test_integrate(self):
        doc = run_json("integrate", "integrate", "Lorenz", "--points", "50")
        self.assertEqual(len(doc["states"]), 50)
        self.assertEqual(len(doc["times"]), 50)
        csv = run("integrate", "Lorenz", "--points", "50").stdout.strip().splitlines()
        self.assertEqual(csv[0], "t,x0,x1,x2")
        self.assertEqual(len(csv), 51)
        noisy_a = run("integrate", "Lorenz", "--points", "20", "--noise", "0.1", "--seed", "3").stdout
        noisy_b = run("integrate", "Lorenz", "--points", "20", "--noise", "0.1", "--seed", "3").stdout
        noisy_c = run("integrate", "Lorenz", "--points", "20", "--noise", "0.1", "--seed", "4").stdout
        self.assertEqual(noisy_a, noisy_b)
        self.assertNotEqual(noisy_a, noisy_c)
        out = self.tmp / "traj.csv"
        run("integrate", "Rossler", "--points", "10", "--out", str(out))
        self.assertEqual(len(out.read_text().strip().splitlines()), 11)

    def test_align(self):
        doc = run_json("align", "align", "Torus", "--surrogates", "200")
        self.assertAlmostEqual(doc["period"], 6.25, delta=0.2)
        self.assertLess(doc["dt"], doc["period"])

    def test_characterize(self):
        doc = run_json("characterize", "characterize", "Lorenz")
        lle = doc["systems"]["Lorenz"]["largest_lyapunov"]
        self.assertAlmostEqual(lle, 0.906, delta=0.05 * 0.906)
        a = run("--json", "characterize", "Lorenz", "--seed", "7", "--replicates", "3").stdout
        b = run("--json", "characterize", "Lorenz", "--seed", "7", "--replicates", "3").stdout
        self.assertEqual(a, b)
        c = run("--json", "--jobs", "2", "characterize", "Lorenz", "--seed", "7", "--replicates", "3").stdout
        self.assertEqual(a, c)
        cached = json.loads((self.data / "annotations.json").read_text())
        self.assertEqual(set(cached), {"Lorenz", "Torus"})

    def test_dataset(self):
        out_a, out_b = self.tmp / "ds_a", self.tmp / "ds_b"
        ann = str(self.data / "annotations.json")
        doc = run_json("dataset", "dataset", "Lorenz", "Torus", "--out", str(out_a), "--seed", "1", "--annotations", ann)
        self.assertEqual([s["status"] for s in doc["systems"]], ["ok", "ok"])
        run("dataset", "Lorenz", "Torus", "--out", str(out_b), "--seed", "1", "--annotations", ann)
        files_a = sorted(p.relative_to(out_a) for p in out_a.rglob("*") if p.is_file())
        files_b = sorted(p.relative_to(out_b) for p in out_b.rglob("*") if p.is_file())
        self.assertEqual(files_a, files_b)
        for rel in files_a:
            self.assertEqual((out_a / rel).read_bytes(), (out_b / rel).read_bytes(), str(rel))
        series = [p for p in (out_a / "Lorenz").iterdir() if p.name.endswith(("_clean.csv", "_noisy.csv"))]
        self.assertEqual(len(series), 16)
        manifest = json.loads((out_a / "manifest.json").read_text())
        self.assertEqual(manifest["seed"], 1)
        self.assertEqual(set(manifest["systems"]), {"Lorenz", "Torus"})

    def test_dataset_unwritable_exits_1(self):
        blocker = self.tmp / "file"
        blocker.write_text("x")
        run("dataset", "Lorenz", "--out", str(blocker / "sub"), check_code=1)

    def test_bench_forecast(self):
        doc = run_json("bench_forecast", "bench", "forecast", "--systems", "Lorenz,Torus", "--out", str(self.data))
        self.assertEqual(doc["rows"], 10)
        lines = (self.data / "forecast.csv").read_text().strip().splitlines()
        self.assertEqual(len(lines), 11)
        self.assertTrue(lines[0].startswith("system,granularity,model"))
        first = (self.data / "forecast.csv").read_bytes()
        run("--jobs", "2", "bench", "forecast", "--systems", "Lorenz,Torus", "--out", str(self.data))
        self.assertEqual(first, (self.data / "forecast.csv").read_bytes())
        run("bench", "forecast", "--systems", "Rossler", "--out", str(self.data), check_code=1)

    def test_bench_sindy_env_dir(self):
        env_dir = self.tmp / "envdata"
        doc = run_json("bench_sindy", "bench", "sindy", "--systems", "Lorenz", env={"CHAOSBENCH_DATA": str(env_dir)})
        self.assertEqual(doc["rows"], 1)
        self.assertLess(doc["systems"][0]["test_smape"], 1.0)
        self.assertTrue((env_dir / "sindy.csv").exists())

    def test_bench_importance(self):
        doc = run_json("bench_importance", "bench", "importance", "--systems", "Torus", "--out", str(self.data))
        self.assertEqual(doc["rows"], 3)
        self.assertEqual(set(doc["median_smape"]), {"full", "random", "weighted"})
        lines = (self.data / "importance.csv").read_text().strip().splitlines()
        self.assertEqual([l.split(",")[1] for l in lines[1:]], ["full", "random", "weighted"])


if __name__ == "__main__":
    CLI = sys.argv[1]
    SCHEMAS = Path(sys.argv[2])
    unittest.main(argv=[sys.argv[0], "-v"])
