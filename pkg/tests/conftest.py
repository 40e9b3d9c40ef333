import pathlib
import sys

# allow running the suite from a plain checkout without installing
SRC = pathlib.Path(__file__).resolve().parent.parent / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))
