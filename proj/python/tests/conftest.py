import glob
import os
import sys

# Allow running against the CMake build tree without installing the wheel:
# put the package source and the built extension on sys.path.
_here = os.path.dirname(os.path.abspath(__file__))
_root = os.path.dirname(os.path.dirname(_here))
for candidate in [os.path.join(_root, "python"), os.path.join(_root, "build")]:
    if candidate not in sys.path:
        sys.path.insert(0, candidate)

try:
    import bonesoup  # noqa: F401
except ImportError:
    matches = glob.glob(os.path.join(_root, "build", "**", "_bonesoup*.so"), recursive=True)
    if matches:
        sys.path.insert(0, os.path.dirname(matches[0]))
