#!/usr/bin/env python3
"""
Performance benchmarking for the latentstart pipeline.
"""
import argparse
import json
import statistics
import sys
import time
from pathlib import Path
from typing import Any, Callable, Dict, List

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from latentstart.core.ddim import invert, sample  # noqa: E402
from latentstart.core.fourier import fft2, ifft2  # noqa: E402
from latentstart.core.models import isotropic_model, load_model  # noqa: E402
from latentstart.core.pipeline import TransferConfig, ablate_startpoints, style_transfer  # noqa: E402
from latentstart.core.schedule import build_schedule  # noqa: E402
from latentstart.data import label_draw  # noqa: E402
from latentstart.utils import SeededRng, format_table  # noqa: E402

SAMPLE_MODEL = Path(__file__).parent.parent / "configs" / "two_mode_model.json"


class BenchmarkResult:
    """Class to store benchmark results."""

    def __init__(self, name: str):
        self.name = name
        self.times: List[float] = []
        self.metrics: Dict[str, Any] = {}

    def add_time(self, elapsed: float):
        self.times.append(elapsed)

    def add_metric(self, name: str, value: Any):
        self.metrics[name] = value

    @property
    def stats(self) -> Dict[str, Any]:
        """Timing statistics in milliseconds."""
        if not self.times:
            return {}
        return {
            "name": self.name,
            "runs": len(self.times),
            "min": min(self.times) * 1000,
            "max": max(self.times) * 1000,
            "mean": statistics.mean(self.times) * 1000,
            "median": statistics.median(self.times) * 1000,
            "stdev": statistics.stdev(self.times) * 1000 if len(self.times) > 1 else 0,
            "total": sum(self.times) * 1000,
            **self.metrics,
        }


class BenchmarkSuite:
    """A collection of benchmarks."""

    def __init__(self, iterations: int = 10):
        self.iterations = iterations
        self.results: Dict[str, BenchmarkResult] = {}

    def run_benchmark(self, name: str, func: Callable, *args, **kwargs) -> BenchmarkResult:
        """Time ``func`` after one warm-up call."""
        if name in self.results:
            raise ValueError(f"Benchmark '{name}' already exists")
        result = BenchmarkResult(name)
        func(*args, **kwargs)
        for _ in range(self.iterations):
            start_time = time.perf_counter()
            func(*args, **kwargs)
            result.add_time(time.perf_counter() - start_time)
        self.results[name] = result
        return result

    def get_results(self) -> Dict[str, Dict[str, Any]]:
        return {name: result.stats for name, result in self.results.items()}

    def print_results(self):
        results = self.get_results()
        if not results:
            print("No benchmark results to display.")
            return
        headers = ["Benchmark", "Runs", "Min (ms)", "Mean (ms)", "Max (ms)", "Stdev (ms)"]
        rows = [
            [name, s["runs"], f"{s['min']:.4f}", f"{s['mean']:.4f}", f"{s['max']:.4f}",
             f"{s['stdev']:.4f}" if s["runs"] > 1 else "N/A"]
            for name, s in results.items()
        ]
        print("\n" + format_table(headers, rows) + "\n")

    def save_results(self, filepath: Path):
        with open(filepath, "w", encoding="utf-8") as f:
            json.dump(self.get_results(), f, indent=2, sort_keys=True)
        print(f"Results saved to {filepath}")


def fft_benchmark(suite: BenchmarkSuite):
    grid = SeededRng(0, "bench/fft").normal((64, 64, 4))
    suite.run_benchmark("FFT round trip 64x64x4", lambda: ifft2(fft2(grid)))


def round_trip_benchmark(suite: BenchmarkSuite):
    schedule = build_schedule()
    model = isotropic_model(SeededRng(0, "bench/mean").normal((16, 16, 4)), 1.0, schedule)
    z0 = SeededRng(0, "bench/z0").normal((16, 16, 4))

    def run():
        return sample(model, schedule, invert(model, schedule, z0).final).final

    result = suite.run_benchmark("DDIM round trip 16x16x4, 50 steps", run)
    result.add_metric("relative_error", float(abs(run() - z0).max() / abs(z0).max()))


def transfer_benchmark(suite: BenchmarkSuite):
    schedule = build_schedule()
    model = load_model(SAMPLE_MODEL, schedule)
    cfg = TransferConfig(label_draw(model, "light", 1), label_draw(model, "dark", 2), seed=7)
    suite.run_benchmark("Style transfer (sample model)", style_transfer, model, schedule, cfg)


def ablation_benchmark(suite: BenchmarkSuite, threads: int):
    schedule = build_schedule()
    model = load_model(SAMPLE_MODEL, schedule)
    cfg = TransferConfig(label_draw(model, "light", 1), label_draw(model, "dark", 2), seed=7)
    kinds = ["inversion", "random", "noised", "shifted", "scaled", "freq_manipulated"]
    for count in sorted({1, threads}):
        suite.run_benchmark(f"Ablation, {count} thread(s)", ablate_startpoints, model, schedule,
                            cfg, kinds, count)


def main():
    """Main function to run benchmarks."""
    parser = argparse.ArgumentParser(description='Run latentstart benchmarks')
    parser.add_argument('--output', '-o', type=Path, help='Output file for benchmark results (JSON)')
    parser.add_argument('--iterations', '-n', type=int, default=10, help='Number of iterations per benchmark')
    parser.add_argument('--threads', '-t', type=int, default=4, help='Threads for the ablation benchmark')
    parser.add_argument('--benchmark', '-b', action='append',
                        choices=['all', 'fft', 'round_trip', 'transfer', 'ablation'],
                        help='Specific benchmarks to run')
    args = parser.parse_args()

    if not args.benchmark or 'all' in args.benchmark:
        benchmarks_to_run = ['fft', 'round_trip', 'transfer', 'ablation']
    else:
        benchmarks_to_run = args.benchmark

    suite = BenchmarkSuite(args.iterations)
    if 'fft' in benchmarks_to_run:
        fft_benchmark(suite)
    if 'round_trip' in benchmarks_to_run:
        round_trip_benchmark(suite)
    if 'transfer' in benchmarks_to_run:
        transfer_benchmark(suite)
    if 'ablation' in benchmarks_to_run:
        ablation_benchmark(suite, args.threads)

    suite.print_results()
    if args.output:
        suite.save_results(args.output)


if __name__ == "__main__":
    main()
