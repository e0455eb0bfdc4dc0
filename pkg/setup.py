#!/usr/bin/env python3
"""
Cross-platform setup script for KR-Torus
Handles virtual environment creation and dependency installation
"""

import os
import sys
import subprocess
import platform
from pathlib import Path

VENV_PATH = Path("venv")


def run_command(command, shell=True):
    """Run a command and return the result"""
    try:
        result = subprocess.run(command, shell=shell, capture_output=True, text=True)
        return result.returncode == 0, result.stdout, result.stderr
    except Exception as e:
        return False, "", str(e)


def check_python_version():
    """Check if Python version is compatible"""
    version = sys.version_info
    if version.major < 3 or (version.major == 3 and version.minor < 9):
        print("❌ Python 3.9+ is required")
        return False
    print(f"✅ Python {version.major}.{version.minor}.{version.micro} detected")
    return True


def create_virtual_environment():
    """Create Python virtual environment"""
    if VENV_PATH.exists():
        print("✅ Virtual environment already exists")
        return True

    print("🔧 Creating Python virtual environment...")
    success, stdout, stderr = run_command(f"{sys.executable} -m venv {VENV_PATH}")

    if not success:
        print(f"❌ Failed to create virtual environment: {stderr}")
        return False

    print("✅ Virtual environment created successfully")
    return True


def get_venv_python():
    """Get the path to the virtual environment Python executable"""
    if platform.system().lower() == "windows":
        return VENV_PATH / "Scripts" / "python.exe"
    return VENV_PATH / "bin" / "python"


def get_venv_pip():
    """Get the path to the virtual environment pip executable"""
    if platform.system().lower() == "windows":
        return VENV_PATH / "Scripts" / "pip.exe"
    return VENV_PATH / "bin" / "pip"


def install_python_dependencies():
    """Install Python dependencies in virtual environment"""
    pip_path = get_venv_pip()
    requirements_path = Path("requirements.txt")

    if not requirements_path.exists():
        print("❌ requirements.txt not found")
        return False

    print("🔧 Installing Python dependencies...")
    success, stdout, stderr = run_command(f'"{pip_path}" install -r "{requirements_path}"')

    if not success:
        print(f"❌ Failed to install Python dependencies: {stderr}")
        return False

    print("✅ Python dependencies installed successfully")
    return True


def create_startup_scripts():
    """Create platform-specific scripts that run the verification grid"""
    if platform.system().lower() == "windows":
        script_content = """@echo off
echo Running KR-Torus verification grid...
venv\\Scripts\\python.exe main.py verify --n 2..5 --m 0..8
"""
        with open("verify.bat", "w") as f:
            f.write(script_content)
    else:
        script_content = """#!/bin/bash
echo "Running KR-Torus verification grid..."
source venv/bin/activate && python main.py verify --n 2..5 --m 0..8
"""
        with open("verify.sh", "w") as f:
            f.write(script_content)
        os.chmod("verify.sh", 0o755)

    print("✅ Startup scripts created")


def main():
    """Main setup function"""
    print("🚀 KR-Torus Setup")
    print("=" * 50)

    if not check_python_version():
        return False

    Path("outputs").mkdir(parents=True, exist_ok=True)

    if not create_virtual_environment():
        return False

    if not install_python_dependencies():
        return False

    create_startup_scripts()

    print("\n🎉 Setup completed successfully!")
    print("\nTo run the verification grid:")
    if platform.system().lower() == "windows":
        print("  Windows: Run 'verify.bat'")
    else:
        print("  macOS/Linux: Run './verify.sh' or './start-verify.sh'")

    print("\nOr manually:")
    print(f"  {get_venv_python()} main.py table --n 3")
    print(f"  {get_venv_python()} -m pytest")

    return True


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
