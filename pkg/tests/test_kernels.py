"""Backend agreement: the compiled kernels must return byte-identical output
to the pure-Python ones for the same flat arguments."""

import random

import pytest

from repkit import _kernels_py, kernels
from repkit.formulas import ActionEq, GroupEq, dimensions, random_formula
from repkit.semantics import HomSpace, _marshal_action_atom, atom_val_action, atom_val_group

try:
    from repkit import _speedups
except ImportError:
    _speedups = None

needs_ext = pytest.mark.skipif(_speedups is None, reason="compiled extension not built")


def _atoms(f):
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, (ActionEq, GroupEq)):
            yield node
        else:
            stack.extend(getattr(node, c) for c in ("left", "right", "child") if hasattr(node, c))


@needs_ext
@pytest.mark.parametrize("name", ["r2", "gl2", "neg4", "c4", "triv3"])
def test_action_kernel_parity(name, request):
    rep = request.getfixturevalue(name)
    rng = random.Random(f"parity:{name}")
    for _ in range(60):
        f = random_formula(rng, rep.module.ring.modulus, action_only=True)
        n, m = dimensions(f)
        space = HomSpace.create(rep, n, m)
        for atom in _atoms(f):
            args = _marshal_action_atom(space, atom.term)
            shared = (space.n, space.m, space._orders_arr, space.g_size,
                      space._cayley_arr, space._inv_arr, space.rep.group.identity,
                      space._action_arr)
            assert _kernels_py.action_atom_bits(*shared, *args) == \
                _speedups.action_atom_bits(*shared, *args)


@needs_ext
@pytest.mark.parametrize("name", ["r2", "gl2"])
def test_group_kernel_parity(name, request):
    from array import array

    rep = request.getfixturevalue(name)
    rng = random.Random(f"gparity:{name}")
    space = HomSpace.create(rep, 1, 2)
    for _ in range(80):
        letters = [(rng.randint(1, 2), rng.choice((1, -1))) for _ in range(rng.randint(0, 5))]
        gens = array("q", [g - 1 for g, _ in letters])
        signs = array("q", [s for _, s in letters])
        shared = (space.block, space.m, space.g_size, space._cayley_arr,
                  space._inv_arr, rep.group.identity, gens, signs)
        assert _kernels_py.group_atom_bits(*shared) == _speedups.group_atom_bits(*shared)


@needs_ext
def test_zero_dimension_parity(r2):
    space = HomSpace.create(r2, 0, 0)
    from repkit.formulas import parse

    atom = parse("0 = 0", 3)
    args = _marshal_action_atom(space, atom.term)
    shared = (0, 0, space._orders_arr, space.g_size, space._cayley_arr,
              space._inv_arr, r2.group.identity, space._action_arr)
    assert _kernels_py.action_atom_bits(*shared, *args) == \
        _speedups.action_atom_bits(*shared, *args)


def test_backend_name_is_reported():
    assert kernels.backend_name() in ("pure", "compiled")


def test_atom_bit_order_is_little_endian(r2):
    # bit i of the returned bytes is point i: for x1*(y1-1)=0 over r2 the
    # first byte must be 0b00001111
    from repkit.formulas import parse

    space = HomSpace.create(r2, 1, 1)
    vs = atom_val_action(parse("x1*(y1 - 1) = 0", 3).term, space)
    assert vs.bits == 0x0F
    gs = atom_val_group(parse("y1 = 1", 3).word, space)
    assert gs.bits == 0b000111
