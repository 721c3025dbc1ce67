"""
Batch Sweep Script
==================

Run every sweep profile in config/sweeps/ and write a combined batch summary.

Usage:
    python scripts/batch_sweep.py                 # all profiles
    python scripts/batch_sweep.py smoke acceptance
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from wonderlat.sweep_config import list_profiles, load_sweep
from wonderlat.utils import ResultWriter
from wonderlat.workflows import SweepPipeline


def run_profile(name: str) -> dict:
    profile = load_sweep(name)
    paths = profile.get_paths()
    options = profile.get_options()

    pipeline = SweepPipeline.from_profile(profile)
    result = pipeline.run()

    writer = ResultWriter(paths["output_folder"])
    saved = []
    if options["save_summary"]:
        saved.append(writer.save_sweep_summary(name, result.summary))
    if options["save_failures"]:
        saved.append(writer.save_failures(name, result.failures))

    return {
        "profile": name,
        "types": len(result.summary),
        "classes": len(result.rows),
        "violations": result.violations,
        "files": saved,
    }


def main(argv=None) -> int:
    project_root = Path(__file__).parent.parent
    profiles = list(argv if argv else list_profiles())

    print("=" * 60)
    print("BATCH SWEEP")
    print("=" * 60)
    print(f"Profiles: {', '.join(profiles)}")

    results_summary = []
    for name in profiles:
        print(f"\n{'=' * 60}")
        print(f"Running: {name}")
        print(f"{'=' * 60}")
        try:
            summary = run_profile(name)
        except Exception as e:
            print(f"\n✗ Failed: {name}")
            print(f"  Error: {e}")
            results_summary.append({"profile": name, "error": str(e)})
            continue

        results_summary.append(summary)
        mark = "✓" if summary["violations"] == 0 else "✗"
        print(f"\n{mark} Completed: {name}")
        print(f"  Types: {summary['types']}")
        print(f"  Classes: {summary['classes']}")
        print(f"  Violations: {summary['violations']}")

    successful = [r for r in results_summary if r.get("violations") == 0]
    failed = [r for r in results_summary if r not in successful]

    print(f"\n\n{'=' * 60}")
    print("BATCH SWEEP SUMMARY")
    print(f"{'=' * 60}")
    print(f"{'Profile':<20} {'Types':>8} {'Classes':>10} {'Violations':>12}")
    print("-" * 60)
    for r in results_summary:
        if "error" in r:
            print(f"{r['profile']:<20} {'error':>8}")
        else:
            print(f"{r['profile']:<20} {r['types']:>8} {r['classes']:>10} {r['violations']:>12}")

    summary_file = project_root / "results" / "sweeps" / "batch_summary.json"
    summary_file.parent.mkdir(parents=True, exist_ok=True)
    with open(summary_file, "w", encoding="utf-8") as f:
        json.dump(
            {
                "total_profiles": len(results_summary),
                "clean": len(successful),
                "failed": len(failed),
                "results": results_summary,
            },
            f,
            indent=2,
        )
    print(f"\n✓ Batch summary saved to: {summary_file}")
    return 0 if not failed else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
