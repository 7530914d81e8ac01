"""The three-part normal form: products, then handles, then coproducts."""
from __future__ import annotations

from .cobordism import InadmissibleTypeError, as_type
from .plans import COPRODUCT, COUNIT, IDENTITY, PRODUCT, UNIT, Permute, compose


def _then(cur, node, channels=None):
    return node if cur is None else compose(cur, node, channels)


def normal_form_plan(t, unital=True):
    """Plan for ``Σ_{g,n,m}``.

    ``n-1`` left-nested products, then ``g`` handles (δ followed by m), then
    ``m-1`` left-nested coproducts ``(δ⊗id^{k-1})``.  With ``n = 0`` the unit
    opens the surface; with ``m = 0`` the counit closes it.

    ``(P⊗id)∘m`` is sewn as ``P`` into the first input of ``m``, and
    ``(δ⊗id^{k-1})`` as ``δ`` on the first output followed by moving its two
    outputs to the front; both give the same slot order without building
    the wide identity tensors.
    """
    t = as_type(t).check(unital)
    g, n, m = t
    if n == 0 and not unital:
        raise InadmissibleTypeError(f"{t}: non-unital mode needs n >= 1")
    cur = UNIT if n == 0 else None
    for _ in range(1, n):
        cur = PRODUCT if cur is None else compose(cur, PRODUCT, [(0, 0)])
    for _ in range(g):
        cur = _then(cur, COPRODUCT)
        cur = compose(cur, PRODUCT)
    if m == 0:
        return _then(cur, COUNIT)
    for k in range(1, m):
        if cur is None:
            cur = COPRODUCT
        elif k == 1:
            cur = compose(cur, COPRODUCT)
        else:
            # outputs after sewing: the k-1 untouched ones, then δ's two
            cur = Permute(compose(cur, COPRODUCT, [(0, 0)]), (), (k - 1, k) + tuple(range(k - 1)))
    return IDENTITY if cur is None else cur


__all__ = ["normal_form_plan"]
