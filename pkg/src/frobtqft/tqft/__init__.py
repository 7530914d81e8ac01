"""2D TQFT maps built by sewing generator cobordisms, and their closed forms."""
from .closed_form import closed_form, euler_power
from .cobordism import CobordismType, InadmissibleTypeError, generator
from .normal_form import normal_form_plan
from .plans import (COPRODUCT, COUNIT, FORM, IDENTITY, PRODUCT, UNIT, Compose, Leaf, Permute,
                    PlanTypeError, Tensor, compose, describe, evaluate_plan, plan_type, tensor)
from .random_plans import random_plan, random_plans
from .suites import (almost_tqft_lemma_suite, cohft_check, duality_collapse_check,
                     normal_form_suite, plan_independence_suite, strip_unit,
                     unital_consistency_check, verify_plan_independence)

__all__ = [
    "COPRODUCT", "COUNIT", "FORM", "IDENTITY", "PRODUCT", "UNIT", "CobordismType", "Compose",
    "InadmissibleTypeError", "Leaf", "Permute", "PlanTypeError", "Tensor", "almost_tqft_lemma_suite",
    "closed_form", "cohft_check", "compose", "describe", "duality_collapse_check", "euler_power",
    "evaluate_plan", "generator", "normal_form_plan", "normal_form_suite", "plan_independence_suite",
    "plan_type", "random_plan", "random_plans", "strip_unit", "tensor", "unital_consistency_check",
    "verify_plan_independence",
]
