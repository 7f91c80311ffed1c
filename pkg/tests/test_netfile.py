import random

import pytest

from pnog import (
    GraphLoadError,
    InvalidNetError,
    NetKind,
    ParseError,
    UnknownAliasError,
    nets_equal,
    parse_netfile,
    serialize_netfile,
    validate_net,
)

from conftest import SAMPLES, samples_loader
from generators import build_net_from_spec, random_net_spec

AIRPORT_TEXT = (SAMPLES / "airport.pnog").read_text()


def test_parse_airport_counts(airport):
    assert len(airport.places) == 4
    assert len(airport.transitions) == 5
    # one arc per non-empty matrix cell: 7 inputs, 8 outputs
    assert len(airport.input_arcs) == 7
    assert len(airport.output_arcs) == 8
    assert airport.kind is NetKind.IMPNOG
    assert airport.initial_marking == ("p1", None, None, None)


def test_parse_header_only():
    net = parse_netfile("net bare kind=CMPNOG\n", samples_loader)
    assert net.places == () and net.transitions == ()
    assert validate_net(net) == []


def test_parse_rejects_bad_headers():
    with pytest.raises(ParseError):
        parse_netfile("", samples_loader)
    with pytest.raises(ParseError):
        parse_netfile("net x kind=WRONG\n", samples_loader)
    with pytest.raises(ParseError):
        parse_netfile("place p ontology=g\n", samples_loader)


def test_parse_undeclared_initial_token_is_reported():
    text = AIRPORT_TEXT.replace("m0 pl1 p1", "m0 pl1 p9")
    with pytest.raises(InvalidNetError) as err:
        parse_netfile(text, samples_loader)
    [v] = err.value.violations
    assert v.place == "pl1"
    assert "p9" in v.message
    assert v.line == AIRPORT_TEXT.splitlines().index("m0 pl1 p1") + 1


def test_parse_unknown_alias():
    text = "net x kind=IMPNOG\nuse og1.og as og1\nplace p ontology=nope\n"
    with pytest.raises(UnknownAliasError):
        parse_netfile(text, samples_loader)


def test_parse_graph_load_failure():
    text = "net x kind=IMPNOG\nuse missing.og as g\nplace p ontology=g\n"
    with pytest.raises(GraphLoadError):
        parse_netfile(text, samples_loader)


def test_parse_duplicate_arc_lines_rejected():
    text = AIRPORT_TEXT + 'in pl1 tr2 "Passenger"\n'
    with pytest.raises(ParseError):
        parse_netfile(text, samples_loader)


def test_formula_errors_carry_netfile_line():
    text = AIRPORT_TEXT.replace('in pl1 tr2 "Passenger"',
                                'in pl1 tr2 "{Passenger"')
    with pytest.raises(ParseError) as err:
        parse_netfile(text, samples_loader)
    assert err.value.line == \
        AIRPORT_TEXT.splitlines().index('in pl1 tr2 "Passenger"') + 1


def test_serialize_airport_is_canonical(airport):
    expected = "".join(line for line in AIRPORT_TEXT.splitlines(keepends=True)
                       if not line.startswith("#"))
    assert serialize_netfile(airport) == expected


def test_serialize_empty_net():
    net = parse_netfile("net bare kind=CMPNOG\n", samples_loader)
    assert serialize_netfile(net) == "net bare kind=CMPNOG\n"


def test_serialize_omits_empty_m0_lines(airport):
    text = AIRPORT_TEXT.replace("m0 pl1 p1\n", "")
    net = parse_netfile(text, samples_loader)
    assert "m0" not in serialize_netfile(net)


def test_round_trip_airport(airport):
    again = parse_netfile(serialize_netfile(airport), samples_loader)
    assert nets_equal(airport, again)


def test_round_trip_randomized():
    rng = random.Random(808)
    for _ in range(60):
        spec = random_net_spec(rng)
        net = build_net_from_spec(spec)
        text = serialize_netfile(net)
        again = parse_netfile(text, lambda path: net.graphs[path[:-3]])
        assert nets_equal(net, again)
        assert serialize_netfile(again) == text
