import json

import pytest

from conftest import index_of
from oracles import reachable_subtree
from prunetest.deptree import (
    DependencyTree,
    Token,
    detokenize,
    from_parser_response,
    make_tree,
    parse_conllu,
    subtree,
    to_conllu,
)
from prunetest.errors import ParseError, ProtocolError, StructureError


def row(i, form, head, deprel):
    return "\t".join([str(i), form, "_", "_", "_", "_", str(head), deprel, "_", "_"])


def test_minimal_block():
    text = "\n".join([row(1, "Hello", 0, "root"), row(2, "world", 1, "obj")]) + "\n"
    (tree,) = parse_conllu(text)
    assert tree.root == 1
    assert tree.children[1] == (2,)
    assert [t.surface for t in tree.tokens] == ["Hello", "world"]


def test_motivating_fixture_shape(motivating):
    # 11 words plus the final period
    assert len(motivating) == 12
    assert motivating[motivating.root].surface == "comes"


def test_sentence_ids_and_comments():
    text = "# sent_id = first\n# text = Go.\n" + row(1, "Go", 0, "root") + "\n" + row(2, ".", 1, "punct") + "\n\n"
    text += row(1, "Stop", 0, "root") + "\n"
    a, b = parse_conllu(text)
    assert a.sentence_id == "first" and a.source_text == "Go."
    assert b.sentence_id == "s2"


def test_multiword_and_empty_nodes_skipped():
    lines = [
        row(1, "I", 3, "nsubj"),
        "2-3\tdon't\t_\t_\t_\t_\t_\t_\t_\t_",
        row(2, "do", 3, "aux"),
        row(3, "n't", 0, "root"),
        "3.1\tgo\t_\t_\t_\t_\t_\t_\t_\t_",
    ]
    (tree,) = parse_conllu("\n".join(lines))
    assert [t.surface for t in tree.tokens] == ["I", "do", "n't"]


def test_subtype_truncation():
    (tree,) = parse_conllu("\n".join([row(1, "Her", 2, "nmod:poss"), row(2, "cat", 0, "root")]))
    assert tree[1].relation == "nmod"
    assert tree[1].deprel == "nmod:poss"


@pytest.mark.parametrize(
    "line, lineno",
    [
        ("1\tHello\t_\t_\t_\t_\t0\troot", 1),
        ("1\tHello\t_\t_\t_\t_\tzero\troot\t_\t_", 1),
    ],
)
def test_malformed_line(line, lineno):
    with pytest.raises(ParseError) as err:
        parse_conllu(line)
    assert err.value.line_number == lineno


def test_parse_error_line_number_counts_comments():
    text = "# sent_id = x\n" + row(1, "Hi", 0, "root") + "\n" + "2\tthere\t_\t_\t_\t_\t1\n"
    with pytest.raises(ParseError) as err:
        parse_conllu(text)
    assert err.value.line_number == 3


@pytest.mark.parametrize(
    "rows, fragment",
    [
        ([row(1, "Hello", 0, "root"), row(2, "world", 2, "obj")], "own head"),
        ([row(1, "a", 0, "root"), row(2, "b", 0, "root")], "exactly one root"),
        ([row(1, "a", 2, "dep"), row(2, "b", 1, "dep"), row(3, "c", 0, "root")], "cycle"),
        ([row(1, "a", 0, "root"), row(3, "b", 1, "dep")], "1..2"),
        ([row(1, "a", 0, "root"), row(2, "b", 7, "dep")], "outside"),
    ],
)
def test_structural_errors(rows, fragment):
    text = "# sent_id = bad\n" + "\n".join(rows)
    with pytest.raises(StructureError) as err:
        parse_conllu(text)
    assert err.value.sentence_id == "bad"
    assert fragment in str(err.value)


def test_token_is_punct():
    assert Token(1, ".", 0, "root").is_punct
    assert Token(1, "x", 0, "punct").is_punct
    assert not Token(1, "x", 0, "root").is_punct


def test_from_parser_response_minimal():
    tree = from_parser_response('{"tokens":[{"index":1,"word":"Go","head":0,"deprel":"root"}]}')
    assert len(tree) == 1 and tree.root == 1


@pytest.mark.parametrize(
    "body",
    [
        '{"tokens":[{"index":1,"word":"Go","deprel":"root"}]}',
        '{"words":[]}',
        "not json",
        '{"tokens":[{"index":"1","word":"Go","head":0,"deprel":"root"}]}',
        '{"tokens":[7]}',
    ],
)
def test_from_parser_response_protocol_errors(body):
    with pytest.raises(ProtocolError):
        from_parser_response(body)


def test_from_parser_response_structure_error():
    body = {"tokens": [{"index": 1, "word": "Go", "head": 1, "deprel": "root"}]}
    with pytest.raises(StructureError):
        from_parser_response(body)


def test_two_ingestion_paths_agree(fixtures_dir, motivating):
    body = (fixtures_dir / "motivating_parser_response.json").read_text(encoding="utf-8")
    via_http = from_parser_response(body)
    (via_conllu,) = parse_conllu((fixtures_dir / "motivating.conllu").read_text(encoding="utf-8"))
    assert via_http == via_conllu == motivating


def test_subtree_examples(motivating):
    assert subtree(motivating, motivating.root) == set(motivating.indices)
    leaf = index_of(motivating, "similarly")
    assert subtree(motivating, leaf) == {leaf}
    movie = index_of(motivating, "movie")
    expected = {index_of(motivating, "in"), index_of(motivating, "the"), movie}
    assert subtree(motivating, movie) == expected == reachable_subtree(motivating, movie)


@pytest.mark.parametrize("bad", [0, 13, -1])
def test_subtree_out_of_range(motivating, bad):
    with pytest.raises(IndexError):
        subtree(motivating, bad)


def test_subtree_matches_reachability_everywhere(examples, corpus):
    for tree in [*examples.values(), *corpus]:
        for i in tree.indices:
            got = subtree(tree, i)
            assert got == reachable_subtree(tree, i)
            union = {i}.union(*(subtree(tree, c) for c in tree.children[i]))
            assert got == union


def test_detokenize_identity(motivating):
    assert detokenize(motivating, set(motivating.indices)) == "A similarly affecting scene comes a little later in the movie."


def test_detokenize_drop_adverb(motivating):
    kept = set(motivating.indices) - {index_of(motivating, "similarly")}
    assert detokenize(motivating, kept) == "A affecting scene comes a little later in the movie."


def test_detokenize_capitalises_after_initial_removal(examples):
    tree = examples["scene"]
    assert detokenize(tree, {2, 3, 4}) == "Scene comes."


def test_detokenize_spacing_rules():
    tree = make_tree("p", [("He", 2, "nsubj"), ("left", 0, "root"), ("(", 4, "punct"), ("twice", 2, "advmod"),
                           (")", 4, "punct"), ("50", 7, "nummod"), ("%", 2, "obj"), (".", 2, "punct")])
    assert detokenize(tree, set(tree.indices)) == "He left (twice) 50%."


def test_detokenize_empty(motivating):
    with pytest.raises(ValueError):
        detokenize(motivating, set())


def test_round_trip_on_fixtures(examples, corpus):
    for tree in [*examples.values(), *corpus]:
        assert detokenize(tree, set(tree.indices)) == tree.source_text


def test_to_conllu_round_trip(examples):
    for tree in examples.values():
        (again,) = parse_conllu(to_conllu(tree))
        assert again == tree


def test_tree_is_immutable(motivating):
    with pytest.raises(Exception):
        motivating.sentence_id = "other"
    assert isinstance(motivating.tokens, tuple)


def test_parser_response_json_shape(fixtures_dir):
    doc = json.loads((fixtures_dir / "motivating_parser_response.json").read_text(encoding="utf-8"))
    assert set(doc["tokens"][0]) == {"index", "word", "head", "deprel"}


def test_direct_construction_validates():
    with pytest.raises(StructureError):
        DependencyTree("x", (Token(1, "", 0, "root"),))
