import sys
from functools import lru_cache
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from ncreg.groebner import groebner_truncated
from ncreg.harness import default_corpus_dir
from ncreg.parser import parse_presentation

CORPUS = default_corpus_dir()

FREE2 = "field F 32003; gens x:1 y:1;"
FREE1 = "field F 32003; gens x:1;"


@lru_cache(maxsize=None)
def corpus_gb(name, D=8):
    P = parse_presentation((CORPUS / f"{name}.alg").read_text())
    return groebner_truncated(P, D)


@lru_cache(maxsize=None)
def text_gb(text, D=8):
    return groebner_truncated(parse_presentation(text), D)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
