from pathlib import Path

import pytest

from aspectra.corpus import parse_annotated_jsonl, parse_semeval_xml

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def mini_annotations():
    return parse_annotated_jsonl(
        (FIXTURES / "mini_annotations.jsonl").read_bytes(), domain="mini"
    )


@pytest.fixture(scope="session")
def mini_xml():
    return parse_semeval_xml((FIXTURES / "mini.xml").read_bytes(), domain="mini")


@pytest.fixture(scope="session")
def restaurant_corpus():
    return parse_annotated_jsonl(
        (FIXTURES / "restaurant.jsonl").read_bytes(), domain="restaurant"
    )
