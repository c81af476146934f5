from __future__ import annotations

import logging
from collections import defaultdict
from typing import TYPE_CHECKING

from iga_fsi.domain.exceptions import RefinementBalanceError
from iga_fsi.domain.services.nurbs import split_bezier

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence
    from fractions import Fraction

    from iga_fsi.domain.entities import BezierPatch, MultiPatchMesh
    from iga_fsi.domain.value_objects import RefinementPlan

logger = logging.getLogger(__name__)


def refine_patches(patches: Iterable[BezierPatch], plan: RefinementPlan) -> list[BezierPatch]:
    """Apply the plan's mid-parameter splits; xi splits first, then eta."""
    refined: list[BezierPatch] = []
    for patch in patches:
        centroid = patch.centroid()
        nx, ny = plan.split_counts(
            patch.lineage.source_id, patch.lineage.spans, (float(centroid[0]), float(centroid[1]))
        )
        current = [patch]
        for direction, count in ((0, nx), (1, ny)):
            for _ in range(count):
                current = [child for parent in current for child in split_bezier(parent, direction)]
        refined.extend(current)
    return refined


def refinement_level_difference(mesh: MultiPatchMesh) -> int:
    """Largest refinement level jump across any interior face (0 for a conforming mesh)."""
    return max((face.level_jump() for face in mesh.faces), default=0)


def check_balance(mesh: MultiPatchMesh, max_level_jump: int) -> None:
    jump = refinement_level_difference(mesh)
    if jump > max_level_jump:
        offenders = [f.coarse.patch for f in mesh.faces if f.level_jump() > max_level_jump]
        raise RefinementBalanceError(
            f"Level jump {jump} exceeds the allowed {max_level_jump} "
            f"(coarse patches {sorted(set(offenders))[:10]})"
        )
    logger.debug("Refinement balance ok: max level jump %d", jump)


def check_split_balance(patches: Sequence[BezierPatch], max_level_jump: int) -> None:
    """Level-jump check on split histories, run before faces are matched.

    Neighbours inside one surface share an exact parametric edge, and the jump
    across it is the difference of their split counts along that edge.
    """
    boxes = [patch.lineage.exact_parametric_box() for patch in patches]
    levels = [patch.lineage.levels() for patch in patches]
    worst = 0
    coarse: set[int] = set()
    for direction in (0, 1):
        along = 1 - direction
        starts: defaultdict[tuple[int, Fraction], list[int]] = defaultdict(list)
        for k, patch in enumerate(patches):
            starts[(patch.lineage.source_id, boxes[k][direction][0])].append(k)
        for k, patch in enumerate(patches):
            lo, hi = boxes[k][along]
            for j in starts.get((patch.lineage.source_id, boxes[k][direction][1]), ()):
                other_lo, other_hi = boxes[j][along]
                if max(lo, other_lo) >= min(hi, other_hi):
                    continue
                jump = abs(levels[k][along] - levels[j][along])
                worst = max(worst, jump)
                if jump > max_level_jump:
                    coarse.add(k if levels[k][along] < levels[j][along] else j)
    if worst > max_level_jump:
        raise RefinementBalanceError(
            f"Level jump {worst} exceeds the allowed {max_level_jump} "
            f"(coarse patches {sorted(coarse)[:10]})"
        )
