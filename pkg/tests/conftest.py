import pytest
from hypothesis import HealthCheck, settings

from trapset.constructions import CutSceneSpec, make_cut_scene_2d, make_E3_bounded, make_E3_stacked, make_En_product
from trapset.trap2d import trap_region

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def base_lines():
    return make_cut_scene_2d(CutSceneSpec(mode="lines"))


@pytest.fixture(scope="session")
def base_rays():
    return make_cut_scene_2d(CutSceneSpec(mode="rays"))


@pytest.fixture(scope="session")
def base_none():
    return make_cut_scene_2d(CutSceneSpec(mode="none"))


@pytest.fixture(scope="session")
def region_lines(base_lines):
    return trap_region(base_lines.scene)


@pytest.fixture(scope="session")
def region_rays(base_rays):
    return trap_region(base_rays.scene)


@pytest.fixture(scope="session")
def e3(base_lines):
    return make_E3_bounded(base_lines)


@pytest.fixture(scope="session")
def e3_stacked(base_lines):
    return make_E3_stacked(base_lines)


@pytest.fixture(scope="session")
def e4(e3):
    return make_En_product(e3, 4)
