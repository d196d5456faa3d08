"""
Unit tests `blowdown.utils._batch`.
"""

from __future__ import annotations

import pytest

from blowdown.utils import _batch


@pytest.fixture(scope="module")
def lst():
    return list(range(10))


def test_ProgressBar(lst: list):
    # test basic loop
    assert [x for x in _batch.ProgressBar(lst)] == lst
    assert [x for x in _batch.ProgressBar(lst, show_progress_bar=False)] == lst
    # test blank init like tqdm
    assert _batch.ProgressBar() is not None
    # test context manager, which is how the sampler uses it
    updated = 0
    with _batch.ProgressBar(total=len(lst), desc="context manager") as progress_bar:
        for _ in lst:
            progress_bar.update()
            updated += 1
    assert updated == len(lst)


def test_ProgressBar_auto_hides():
    assert _batch.ProgressBar(total=10).disable
    assert not _batch.ProgressBar(
        total=10, min_total_for_showing_progress_bar=5
    ).disable
    assert not _batch.ProgressBar(total=10, show_progress_bar=True).disable

