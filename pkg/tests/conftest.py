import shutil
from importlib import resources
from pathlib import Path

import pytest

from s2r_engine.app_sim import explore_dft, extract_declared_model
from s2r_engine.app_spec import load_app_spec
from s2r_engine.gui_model import union
from s2r_engine.predictor import select_model
from s2r_engine.similarity import load_bundled_vectors
from s2r_engine.traces import load_trace_dir, refine_model, to_gat, to_get

FIXTURE_DIR = resources.files("s2r_engine.data").joinpath("fixture_app")


@pytest.fixture(scope="session")
def fixture_spec_path() -> Path:
    return Path(str(FIXTURE_DIR.joinpath("gnucash_like.json")))


@pytest.fixture(scope="session")
def fixture_traces_dir() -> Path:
    return Path(str(FIXTURE_DIR.joinpath("traces")))


@pytest.fixture(scope="session")
def app_spec(fixture_spec_path):
    return load_app_spec(fixture_spec_path)


@pytest.fixture(scope="session")
def fixture_traces(fixture_traces_dir):
    return load_trace_dir(fixture_traces_dir)


@pytest.fixture(scope="session")
def gui_model(app_spec, fixture_traces):
    gm = union(extract_declared_model(app_spec), explore_dft(app_spec))
    return refine_model(gm, fixture_traces).finalize()


@pytest.fixture(scope="session")
def store():
    return load_bundled_vectors()


@pytest.fixture(scope="session")
def gat_sequences(fixture_traces):
    return [to_gat(t).tokens for t in fixture_traces]


@pytest.fixture(scope="session")
def get_sequences(fixture_traces):
    return [to_get(t).tokens for t in fixture_traces]


@pytest.fixture(scope="session")
def selected_models(gat_sequences, get_sequences):
    """(config, wes, model) for both prediction models on the fixture traces."""
    return {
        "GAPM": select_model(gat_sequences, "GAPM"),
        "GEPM": select_model(get_sequences, "GEPM"),
    }


@pytest.fixture()
def service_dirs(tmp_path, fixture_spec_path, fixture_traces_dir):
    """apps/models/reports layout ready for create_app, built via the CLI."""
    from s2r_engine.cli import main

    apps = tmp_path / "apps"
    apps.mkdir()
    shutil.copy(fixture_spec_path, apps / "gnucash-like.json")
    mdir = tmp_path / "models" / "gnucash-like"
    mdir.mkdir(parents=True)
    spec = str(apps / "gnucash-like.json")
    assert main(["static", "--spec", spec, "--out", str(tmp_path / "gm_s.json")]) == 0
    assert main(["explore", "--spec", spec, "--out", str(tmp_path / "gm_d.json")]) == 0
    assert (
        main(
            [
                "union",
                "--left",
                str(tmp_path / "gm_s.json"),
                "--right",
                str(tmp_path / "gm_d.json"),
                "--out",
                str(mdir / "gm.json"),
            ]
        )
        == 0
    )
    assert (
        main(
            [
                "refine",
                "--model",
                str(mdir / "gm.json"),
                "--traces",
                str(fixture_traces_dir),
                "--out",
                str(mdir / "gm.json"),
            ]
        )
        == 0
    )
    assert (
        main(["build-models", "--traces", str(fixture_traces_dir), "--out-dir", str(mdir)]) == 0
    )
    return {
        "apps": apps,
        "models": tmp_path / "models",
        "reports": tmp_path / "reports",
        "spec": Path(spec),
    }
