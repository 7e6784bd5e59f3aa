from . import autodiff, kernels
from .autodiff import Var, grad, value_and_grad, tree_map, tree_map2, tree_leaves
from .adam import AdamState, adam_init, adam_step
from .made import made_masks, made_degrees, made_init, made_apply, masks_with_context
from .mlp import MlpSpec, mlp_init, mlp_apply, mlp_forward
from .params import params_to_doc, params_from_doc, save_params, load_params
from .training import LossProfile, fit_loop

__all__ = [
    "autodiff",
    "kernels",
    "Var",
    "grad",
    "value_and_grad",
    "tree_map",
    "tree_map2",
    "tree_leaves",
    "AdamState",
    "adam_init",
    "adam_step",
    "made_masks",
    "made_degrees",
    "made_init",
    "made_apply",
    "masks_with_context",
    "MlpSpec",
    "mlp_init",
    "mlp_apply",
    "mlp_forward",
    "params_to_doc",
    "params_from_doc",
    "save_params",
    "load_params",
    "LossProfile",
    "fit_loop",
]
