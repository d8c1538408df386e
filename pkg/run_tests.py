#!/usr/bin/env python3
"""Test runner script for conclab.

This script provides convenient commands to run different test suites.
"""

import subprocess
import sys
from pathlib import Path

SUBPACKAGES = (
    "core",
    "distributions",
    "empirical",
    "functional",
    "hopf_lax",
    "matrix",
    "verifier",
)


def run_command(command, description=""):
    """Run a command and display results."""
    if description:
        print(f"\n{'='*60}")
        print(f"🧪 {description}")
        print(f"{'='*60}")

    try:
        subprocess.run(command, shell=True, check=True, cwd=Path(__file__).parent)
        return True
    except subprocess.CalledProcessError as e:
        print(f"❌ Command failed with exit code {e.returncode}")
        return False


def main():
    """Main test runner function."""
    print("🚀 conclab Test Runner")

    if len(sys.argv) < 2:
        print("""
Available test commands:
  python run_tests.py unit           - Run all unit tests
  python run_tests.py integration    - Run integration tests
  python run_tests.py <subpackage>   - Run one subpackage's unit tests
                                       (core, distributions, empirical, functional,
                                        hopf_lax, matrix, verifier)
  python run_tests.py coverage       - Run tests with coverage report
  python run_tests.py quick          - Run everything not marked slow
  python run_tests.py all            - Run all tests
        """)
        return

    test_type = sys.argv[1].lower()

    if test_type == "unit":
        ok = run_command("python -m pytest tests/unit/ -v", "Running Unit Tests")

    elif test_type == "integration":
        ok = run_command(
            "python -m pytest tests/integration/ -v",
            "Running Integration Tests"
        )

    elif test_type in SUBPACKAGES:
        ok = run_command(
            f"python -m pytest tests/unit/{test_type}/ -v",
            f"Running {test_type} Tests"
        )

    elif test_type == "coverage":
        ok = run_command(
            "python -m pytest tests/ --cov=conclab --cov-report=html --cov-report=term",
            "Running Tests with Coverage Report"
        )
        print("\n📊 Coverage report generated in htmlcov/index.html")

    elif test_type == "quick":
        ok = run_command(
            "python -m pytest tests/ -m 'not slow'",
            "Running Quick Test Suite"
        )

    elif test_type == "all":
        ok = run_command("python -m pytest tests/ -v --tb=short", "Running All Tests")

    else:
        print(f"❌ Unknown test type: {test_type}")
        print("Use 'python run_tests.py' without arguments to see available options.")
        ok = False

    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
