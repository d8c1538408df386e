"""Lookup of catalog entries by bound id."""

import logging
from typing import Dict, Iterable, List

from conclab.core.exceptions import ConfigurationError, UnknownBoundError
from conclab.verifier.base import BoundCheck
from conclab.verifier.catalog import all_checks

logger = logging.getLogger(__name__)


def build_catalog() -> Dict[str, BoundCheck]:
    """Map every bound id to its entry.

    Raises:
        ValueError: If two entries share a bound id.
    """
    catalog: Dict[str, BoundCheck] = {}
    for check in all_checks():
        if check.bound_id in catalog:
            raise ValueError(f"Bound id '{check.bound_id}' already registered")
        catalog[check.bound_id] = check
    return catalog


CATALOG = build_catalog()


def known_bounds() -> List[str]:
    """Bound ids in catalog order."""
    return list(CATALOG)


def get_check(bound_id: str) -> BoundCheck:
    """Return the entry registered under ``bound_id``.

    Raises:
        UnknownBoundError: If the id is not in the catalog.
    """
    try:
        return CATALOG[bound_id]
    except KeyError:
        raise UnknownBoundError(bound_id, known_bounds())


def validate_bounds(bound_ids: Iterable[str]) -> List[str]:
    """Check every id before anything runs; returns the ids as a list.

    Raises:
        UnknownBoundError: On the first id not in the catalog.
        ConfigurationError: If an id is listed twice.
    """
    ids = list(bound_ids)
    repeated = sorted({bound_id for bound_id in ids if ids.count(bound_id) > 1})
    if repeated:
        raise ConfigurationError(
            "bound ids must be unique", details={"repeated": repeated}
        )
    for bound_id in ids:
        get_check(bound_id)
    logger.debug(f"[CATALOG] validated {len(ids)} bound ids")
    return ids
