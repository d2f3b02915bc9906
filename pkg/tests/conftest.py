import os
from fractions import Fraction
from pathlib import Path

import pytest

from epicoord import (
    HumanData,
    builtin_loudspeaker,
    builtin_messenger,
    from_world_model,
    x_event,
)

DELTA = Fraction(1, 4)


def human_data_path() -> Path:
    env = os.environ.get("EPICOORD_HUMAN_DATA")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent.parent / "data" / "human_conditions.csv"


requires_human_data = pytest.mark.skipif(
    not human_data_path().exists(),
    reason="observed-proportions CSV not provided; set EPICOORD_HUMAN_DATA or add data/human_conditions.csv",
)


@pytest.fixture(scope="session")
def loudspeaker_spec():
    return builtin_loudspeaker(DELTA)


@pytest.fixture(scope="session")
def messenger_spec():
    return builtin_messenger(DELTA)


@pytest.fixture(scope="session")
def loudspeaker(loudspeaker_spec):
    return from_world_model(loudspeaker_spec)


@pytest.fixture(scope="session")
def messenger(messenger_spec):
    return from_world_model(messenger_spec)


@pytest.fixture(scope="session")
def loudspeaker_target(loudspeaker_spec, loudspeaker):
    return x_event(loudspeaker_spec, loudspeaker.space)


@pytest.fixture(scope="session")
def messenger_target(messenger_spec, messenger):
    return x_event(messenger_spec, messenger.space)


def make_human(private, secondary, tertiary, common, n=40) -> HumanData:
    values = {
        "private": Fraction(private),
        "secondary": Fraction(secondary),
        "tertiary": Fraction(tertiary),
        "common": Fraction(common),
    }
    return HumanData({name: n for name in values}, values)


@pytest.fixture
def synthetic_human():
    # deliberately made-up proportions with the low / mid / mid / high shape
    return make_human(Fraction(1, 5), Fraction(11, 20), Fraction(3, 5), Fraction(17, 20))
