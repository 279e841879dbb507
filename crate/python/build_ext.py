"""Builds the extension with cargo and places it next to this script."""

import os
import shutil
import subprocess
import sys
import sysconfig

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def main():
    subprocess.run(["cargo", "build", "--release", "-p", "superpi-py"], cwd=ROOT, check=True)
    lib = {"darwin": "libsuperpi.dylib", "win32": "superpi.dll"}.get(sys.platform, "libsuperpi.so")
    src = os.path.join(ROOT, "target", "release", lib)
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    dst = os.path.join(ROOT, "python", "superpi" + suffix)
    shutil.copyfile(src, dst)
    print(dst)


if __name__ == "__main__":
    main()
