"""Tests for checkpoint repositories.

Tests cover:
- CheckpointRepository interface implementation
- Exact reproduction of saved arrays, with absent sides staying absent
- Reference resolution and the latest checkpoint
- Copy semantics of the in-memory repository
"""

from pathlib import Path

import numpy as np
import pytest

from iga_fsi.application.ports import Checkpoint, CheckpointRepository
from iga_fsi.domain.exceptions import CheckpointNotFoundError, ConfigurationError
from iga_fsi.infrastructure import InMemoryCheckpointRepository, NpzCheckpointRepository

# =============================================================================
# Fixtures
# =============================================================================


@pytest.fixture
def checkpoint() -> Checkpoint:
    rng = np.random.default_rng(7)
    return Checkpoint(
        step=12,
        time=0.375,
        config='{"name": "membrane"}',
        flow_w=rng.random((3, 9, 4)),
        flow_g=rng.random((3, 9, 4, 2)),
        positions=rng.random((3, 9, 2)),
        velocities=np.zeros((3, 9, 2)),
        structure_u=rng.random(5),
        structure_v=rng.random(5),
        structure_a=rng.random(5),
        energy_transferred=1.25,
        energy_steps=12,
    )


@pytest.fixture
def structure_only() -> Checkpoint:
    return Checkpoint(
        step=3,
        time=0.015,
        config="{}",
        structure_u=np.ones((4, 2)),
        structure_v=np.zeros((4, 2)),
        structure_a=np.zeros((4, 2)),
    )


def _assert_same(loaded: Checkpoint, saved: Checkpoint) -> None:
    assert (loaded.step, loaded.time, loaded.config) == (saved.step, saved.time, saved.config)
    assert loaded.energy_transferred == saved.energy_transferred
    assert loaded.energy_steps == saved.energy_steps
    for name in ("flow_w", "flow_g", "positions", "velocities", "structure_u"):
        expected = getattr(saved, name)
        if expected is None:
            assert getattr(loaded, name) is None
        else:
            np.testing.assert_array_equal(getattr(loaded, name), expected)


# =============================================================================
# Npz repository
# =============================================================================


class TestNpzCheckpointRepository:
    def test_implements_interface(self, tmp_path: Path) -> None:
        assert isinstance(NpzCheckpointRepository(tmp_path), CheckpointRepository)

    def test_round_trip_is_exact(self, tmp_path: Path, checkpoint: Checkpoint) -> None:
        repository = NpzCheckpointRepository(tmp_path / "checkpoints")
        reference = repository.save(checkpoint)
        assert Path(reference).name == "checkpoint_00000012.npz"
        _assert_same(repository.load(reference), checkpoint)

    def test_absent_sides_stay_absent(self, tmp_path: Path, structure_only: Checkpoint) -> None:
        repository = NpzCheckpointRepository(tmp_path)
        _assert_same(repository.load(repository.save(structure_only)), structure_only)

    def test_bare_name_resolves_in_directory(
        self, tmp_path: Path, structure_only: Checkpoint
    ) -> None:
        repository = NpzCheckpointRepository(tmp_path)
        repository.save(structure_only)
        assert repository.load("checkpoint_00000003.npz").step == 3

    def test_latest_is_highest_step(
        self, tmp_path: Path, checkpoint: Checkpoint, structure_only: Checkpoint
    ) -> None:
        repository = NpzCheckpointRepository(tmp_path)
        assert repository.latest() is None
        repository.save(checkpoint)
        repository.save(structure_only)
        latest = repository.latest()
        assert latest is not None and latest.step == 12

    def test_unknown_reference(self, tmp_path: Path) -> None:
        with pytest.raises(CheckpointNotFoundError):
            NpzCheckpointRepository(tmp_path).load("checkpoint_00000099.npz")

    def test_unreadable_file(self, tmp_path: Path) -> None:
        path = tmp_path / "checkpoint_00000001.npz"
        path.write_bytes(b"not an archive")
        with pytest.raises(ConfigurationError, match="unreadable"):
            NpzCheckpointRepository(tmp_path).load(str(path))


# =============================================================================
# In-memory repository
# =============================================================================


class TestInMemoryCheckpointRepository:
    def test_implements_interface(self) -> None:
        assert isinstance(InMemoryCheckpointRepository(), CheckpointRepository)

    def test_saved_copy_is_isolated(self, checkpoint: Checkpoint) -> None:
        repository = InMemoryCheckpointRepository()
        assert checkpoint.structure_u is not None
        u = checkpoint.structure_u.copy()
        reference = repository.save(checkpoint)
        checkpoint.structure_u[0] = -1.0
        loaded = repository.load(reference)
        assert loaded.structure_u is not None
        np.testing.assert_array_equal(loaded.structure_u, u)

    def test_latest_and_references(
        self, checkpoint: Checkpoint, structure_only: Checkpoint
    ) -> None:
        repository = InMemoryCheckpointRepository()
        repository.save(checkpoint)
        repository.save(structure_only)
        assert repository.references == ["step-12", "step-3"]
        latest = repository.latest()
        assert latest is not None and latest.step == 3

    def test_unknown_reference(self) -> None:
        with pytest.raises(CheckpointNotFoundError):
            InMemoryCheckpointRepository().load("step-1")
