"""
Example script demonstrating qheine.

Synthesizes a few contiguous relations, lists the Heine group and checks
two of its elements numerically.
"""

from src import Workbench
from src.utils.errors import QHeineError
from src.utils.logger import format_error, format_info, format_success, format_warning


def main():
    """Run the example jobs."""
    print("=" * 70)
    print("  QHEINE - Example Script")
    print("=" * 70)
    print()

    print(format_info("Initializing workbench..."))
    bench = Workbench()
    print()

    examples = [
        {"name": "P_a", "shifts": ["A", "1", "Z"]},
        {"name": "ABC relation", "shifts": ["A B C", "Z", "1"]},
        {"name": "Wide shift", "shifts": ["A^2", "A", "1"]},
    ]

    try:
        for example in examples:
            print(format_info(f"Relation {example['name']}: {' '.join(example['shifts'])}"))
            _, report = bench.relation(example["shifts"], truncation=12)
            print(f"  {report.text} = 0")
            if report.verified:
                print(format_success(f"annihilates 2phi1 to order z^{report.truncation}"))
            else:
                print(format_error("series check failed"))
            print()

        print(format_info("Heine group..."))
        group = bench.group()
        print(f"  order {group.order}, generator orders {group.generator_orders}")
        print()

        print(format_info("Numerical check of t_h and t_ab..."))
        suite = bench.verify_symmetry(bench.eval_config(samples=5), words=["t_h", "t_ab"])
        for s in suite.symmetries:
            line = f"{s.word:<8} max rel. error {s.max_rel_error:.2e}"
            print(format_success(line) if s.passed else format_warning(line))

    except QHeineError as e:
        print(format_error(f"{e.__class__.__name__}: {e.message}"))

    print()
    print("Engine statistics:")
    for name, stats in bench.get_engine_stats().items():
        if stats["executions"]:
            print(f"  {name}: {stats['executions']} runs, {stats['total_time']:.2f}s")

    print()
    print("=" * 70)


if __name__ == "__main__":
    main()
