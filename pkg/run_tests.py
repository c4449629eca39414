# run_tests.py
import argparse
import subprocess
import sys


def main():
    parser = argparse.ArgumentParser(description="Run the lab's test suite")
    parser.add_argument("--profile", choices=["desk", "full"], default="desk",
                        help="Budgets and grids to run under; slow tests need 'full'")
    parser.add_argument("--parallel", type=int, help="Number of parallel workers")
    parser.add_argument("--tags", help="Marker expression, e.g. 'smoke' or 'identity and not slow'")
    parser.add_argument("--report", choices=["html", "none"], default="html")

    args = parser.parse_args()

    cmd = ["pytest", "--profile", args.profile]

    if args.parallel:
        cmd.extend(["-n", str(args.parallel)])

    if args.tags:
        cmd.extend(["-m", args.tags])

    if args.report == "none":
        cmd.extend(["-p", "no:html"])

    try:
        subprocess.run(cmd, check=True)
    except subprocess.CalledProcessError as e:
        print(f"Tests failed with exit code {e.returncode}")
        sys.exit(e.returncode)


if __name__ == "__main__":
    main()
