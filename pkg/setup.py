"""
Quick Start Configuration

Setup instructions and initialization script.
"""

import sys
import subprocess


def check_python_version():
    """Check if Python version is 3.8+."""
    if sys.version_info < (3, 8):
        print("❌ Python 3.8+ is required")
        sys.exit(1)
    print(f"✅ Python {sys.version_info.major}.{sys.version_info.minor}")


def install_dependencies():
    """Install numpy, scipy, pandas and networkx."""
    print("\n📦 Installing dependencies...")
    try:
        subprocess.check_call([
            sys.executable, '-m', 'pip', 'install', '-q', '-r', 'requirements.txt'
        ])
        print("✅ Dependencies installed")
    except subprocess.CalledProcessError as e:
        print(f"❌ Failed to install dependencies: {e}")
        sys.exit(1)


def setup():
    """Run complete setup."""
    print("=" * 80)
    print("QUANTUM WALK COMPILER - SETUP")
    print("=" * 80)

    check_python_version()
    install_dependencies()

    print("\n" + "=" * 80)
    print("✅ SETUP COMPLETE!")
    print("=" * 80)
    print("\n🚀 Next Steps:")
    print("   1. Generate a dataset: python main.py generate --dataset connected-8 --out data/c8")
    print("   2. Compare methods:    python main.py compare --graphs data/c8 --out results.csv")
    print("   3. Build plot data:    python main.py report --csv results.csv --out plots/")
    print("\n🧪 Tests:")
    print("   python -m unittest discover tests")
    print("   CTQW_SLOW_TESTS=1 python -m unittest tests.test_acceptance")


def build_package():
    """Package manifest used by pip / setuptools build commands."""
    from setuptools import setup as setuptools_setup
    with open('requirements.txt') as fh:
        requirements = [line.strip() for line in fh if line.strip() and not line.startswith('#')]
    setuptools_setup(
        name='ctqw-compiler',
        version='1.0.0',
        packages=['src', 'config'],
        py_modules=['main'],
        install_requires=requirements,
        python_requires='>=3.8',
    )


if __name__ == '__main__':
    if len(sys.argv) > 1:
        build_package()
    else:
        setup()
