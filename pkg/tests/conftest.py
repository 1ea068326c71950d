import pytest

from rigidcw import make_cube, make_modular_tree, make_polygon, make_simplex, make_square

METHODS = ["rfs", "hybrid", "vss", "barycentric"]

_criteria: dict[int, dict] = {}


def all_fixtures():
    """Every built-in complex small enough for the exhaustive suites."""
    return {
        "square": make_square(),
        "simplex1": make_simplex(1),
        "simplex2": make_simplex(2),
        "simplex3": make_simplex(3),
        "polygon3": make_polygon(3),
        "polygon4": make_polygon(4),
        "polygon5": make_polygon(5),
        "cube2": make_cube(2),
        "cube3-mirror": make_cube(3, "mirror"),
        "tree-t1": make_modular_tree("t1"),
        "tree-t2": make_modular_tree("t2"),
    }


@pytest.fixture(scope="session")
def fixtures():
    return all_fixtures()


@pytest.fixture(scope="session")
def rigidified(fixtures):
    """(fixture name, method) -> rigidified complex, computed once per session."""
    from rigidcw import rigidify

    return {(name, m): rigidify(X, m) for name, X in fixtures.items() for m in METHODS}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    if crit is None:
        return
    number, title = crit
    entry = _criteria.setdefault(number, {"title": title, "outcomes": []})
    if report.when == "call" or report.outcome in ("failed", "skipped"):
        entry["outcomes"].append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = tuple(marker.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        outs = entry["outcomes"]
        if "failed" in outs:
            verdict = "FAIL"
        elif outs and all(o == "skipped" for o in outs):
            verdict = "SKIP"
        else:
            verdict = "PASS"
        terminalreporter.write_line(f"criterion {number:>2}: {verdict}  {entry['title']}")
