"""Smoke test for the hetconv Python extension.

    pip install --no-build-isolation -e crates/py
    python python/smoke.py
"""

import pathlib

import hetconv

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURE = ROOT / "fixtures" / "got-mini"
BENCHMARK = str(FIXTURE / "benchmark.json")


def main():
    corpus = hetconv.Corpus(str(FIXTURE))
    counts = corpus.counts()
    assert counts["entities"] > 0 and counts["facts"] > 0, counts
    assert ("the dwarf", 2, 4) in corpus.match_mentions("Who played the dwarf?")

    sr = hetconv.StructuredRepresentation.parse("GoT | the dwarf | who played | human")
    assert sr.context == ["GoT"] and sr.question_entities == ["the dwarf"]
    assert sr.serialize() == "GoT | the dwarf | who played | human"
    try:
        hetconv.StructuredRepresentation.parse("GoT | the dwarf")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed SR accepted")

    evidences = corpus.retrieve("Game of Thrones running time", e=5)
    assert 0 < len(evidences) <= 5

    pipeline = hetconv.Pipeline(corpus, {"qu": "heuristic_sr"})
    session = pipeline.session()
    first = session.ask("Who played Jaime Lannister in GoT?")
    assert first["answer"]["raw"] == "Nikolaj Coster-Waldau", first["answer"]
    second = session.ask("What about the dwarf?")
    assert any(e["to_turn"] == 0 for e in second["cfg"]["edges"])
    edited = session.ask(
        "What about the dwarf?",
        ["Game of Thrones", "Tyrion Lannister", "cast member character role", "human"],
    )
    assert edited["answer"]["raw"] == "Peter Dinklage" and len(session) == 2

    run = hetconv.Pipeline(corpus, {"qu": "gold_sr"}).run(BENCHMARK)
    report = hetconv.evaluate(run, BENCHMARK)
    assert len(run) == 100 and report["answer_presence"] == 1.0, report["answer_presence"]

    assert hetconv.levenshtein("kitten", "sitting") == 3
    stat, p = hetconv.mcnemar(10, 2)
    assert abs(stat - 49 / 12) < 1e-9 and 0.04 < p < 0.05
    t, _ = hetconv.paired_t_test([2.0, 4.0, 6.0], [1.0, 2.0, 3.0])
    assert abs(t - 2 * 3 ** 0.5) < 1e-9

    print(f"ok: P@1 {report['p_at_1']:.3f}, answer presence {report['answer_presence']:.3f}")


if __name__ == "__main__":
    main()
