import json

from latmod.chart import ChartIdeal
from latmod.chains import ChainSpec
from latmod.poly import GF, PolyRing, QQ
from latmod.schemes import mu_chart_ideal, mu_ideal, sigma_ideal


def test_roundtrip_mu():
    chart = mu_ideal(2, 1, 1)
    text = chart.to_json(indent=2)
    back = ChartIdeal.from_json(text)
    assert back.ring == chart.ring
    assert set(back.generators) == set(chart.generators)
    assert back.provenance == chart.provenance


def test_roundtrip_chart_with_inverses():
    chart = mu_chart_ideal(ChainSpec(2, 1, 1, (1, 1)))
    back = ChartIdeal.from_json(chart.to_json())
    assert back.inverses == chart.inverses
    assert back.meta["minors"] == chart.meta["minors"]


def test_roundtrip_gf():
    chart = mu_ideal(2, 1, 1, GF(5))
    back = ChartIdeal.from_json(chart.to_json())
    assert back.ring.field is GF(5)
    assert set(back.generators) == set(chart.generators)


def test_grammar_document_example():
    ring = PolyRing(QQ, ["Pi0_1_2", "t"])
    f = ring.parse("3/2*Pi0_1_2^2*t - 1")
    doc = json.dumps({"generators": [str(f)]})
    back = ring.parse(json.loads(doc)["generators"][0])
    assert back == f


def test_sigma_roundtrip():
    chart = sigma_ideal(1, 1)
    back = ChartIdeal.from_json(chart.to_json())
    assert set(back.generators) == set(chart.generators)
    assert dict(back.meta) == dict(chart.meta)


def test_inverse_relations_present():
    """Every inverse auxiliary y appears with its relation y*f - 1."""
    chart = mu_chart_ideal(ChainSpec(3, 1, 1, (1, 2)))
    ring = chart.ring
    gens = set(chart.generators)
    for name, f in chart.inverses:
        assert ring.var(name) * f - 1 in gens
