""" Stateful UID association under the original-UID and any-UID criteria. """

from types import MappingProxyType

from ..exceptions import MatcherInvariantError
from ..typings import AssociationState, FrameMatching, UidCriterion


def eligible(
    state: AssociationState, gt_uid: str, pred_uid: str, criterion: UidCriterion
) -> bool:
    """Whether a predicted UID may be matched with a ground truth UID.

    Any UID: the predicted UID is unclaimed or already belongs to this ground truth.
    Original UID: additionally, the ground truth has no first predicted UID yet or
    it is this one.
    """
    owner = state.pred_to_gt.get(pred_uid)
    if owner is not None and owner != gt_uid:
        return False
    if criterion is UidCriterion.ORIGINAL_UID:
        first = state.gt_to_first_pred.get(gt_uid)
        if first is not None and first != pred_uid:
            return False
    return True


def advance_association(state: AssociationState, m: FrameMatching) -> AssociationState:
    """Record the first associations created by a frame's matching.

    Raises:
        MatcherInvariantError: If a predicted UID is matched to a ground truth other
            than the one it is already associated with.
    """
    pred_to_gt = dict(state.pred_to_gt)
    gt_to_first_pred = dict(state.gt_to_first_pred)
    changed = False
    for gt_uid, pred_uid, _ in m.pairs:
        owner = pred_to_gt.get(pred_uid)
        if owner is None:
            pred_to_gt[pred_uid] = gt_uid
            changed = True
        elif owner != gt_uid:
            raise MatcherInvariantError(
                f"frame {m.frame}: predicted uid {pred_uid!r} already belongs to "
                f"{owner!r}, cannot associate with {gt_uid!r}"
            )
        if gt_uid not in gt_to_first_pred:
            gt_to_first_pred[gt_uid] = pred_uid
            changed = True
    if not changed:
        return state
    return AssociationState(
        pred_to_gt=MappingProxyType(pred_to_gt),
        gt_to_first_pred=MappingProxyType(gt_to_first_pred),
    )
