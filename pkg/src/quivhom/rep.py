"""Twisted quiver representations over a field.

A representation assigns a vector space V_i to each vertex and a matrix
phi_a : M_a ⊗ V_ta -> V_ha to each arrow, where M_a is a twist space of
dimension twist[a].  Tensor bases are ordered with the M_a index most
significant, everywhere; Hom blocks are vectorised column-major, and
direct sums are ordered by vertex, then by arrow, in quiver list order.
These three conventions make the connecting map, the resolution
differential and the lifting algorithm index identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .linalg import (
    ExactMatrix,
    FieldSpec,
    MatrixBuilder,
    cokernel_dimension,
    cokernel_representatives,
    kernel_basis,
    kron,
    solve,
    unvec_matrix,
    vec_matrix,
    vec_precompose,
    vec_twisted_postcompose,
)
from .quiver import Path, Quiver


class IncompatibleError(ValueError):
    """Raised when two representations do not live over the same data."""


@dataclass(frozen=True)
class TwistData:
    """One twist dimension per arrow; dimension 1 recovers the untwisted case."""

    dims: Tuple[int, ...]

    def __init__(self, dims):
        dims = tuple(int(d) for d in dims)
        if any(d < 1 for d in dims):
            raise ValueError("twist dimensions must be >= 1")
        object.__setattr__(self, "dims", dims)

    def __getitem__(self, a: int) -> int:
        return self.dims[a]

    @staticmethod
    def untwisted(n_arrows: int) -> "TwistData":
        return TwistData((1,) * n_arrows)


class PathBasis:
    """Ordered tensor basis of M_p = M_{a_m} ⊗ ... ⊗ M_{a_0}.

    The leftmost factor (last arrow applied) is most significant.  Trivial
    paths have the single basis element e_i.
    """

    def __init__(self, twist: TwistData, path: Path):
        self.path = path
        self.factor_dims = tuple(twist[a] for a in path.arrows)
        d = 1
        for f in self.factor_dims:
            d *= f
        self.dim = d

    def digits(self, index: int) -> Tuple[int, ...]:
        """Per-arrow indices in application order (first arrow first)."""
        if not 0 <= index < self.dim:
            raise IndexError(f"tensor index {index} out of range for dim {self.dim}")
        out = []
        for f in self.factor_dims:
            out.append(index % f)
            index //= f
        return tuple(out)

    def index(self, digits: Sequence[int]) -> int:
        # the digit of the last arrow applied is most significant
        idx = 0
        for d, f in reversed(list(zip(digits, self.factor_dims))):
            idx = idx * f + d
        return idx


def path_tensor_dim(twist: TwistData, path: Path) -> int:
    d = 1
    for a in path.arrows:
        d *= twist[a]
    return d


class TwistedRep:
    """A module over the twisted path algebra, given by vertex spaces and arrow maps."""

    def __init__(self, quiver: Quiver, twist: TwistData, field: FieldSpec,
                 dims: Sequence[int], phi: Sequence[ExactMatrix]):
        if len(dims) != quiver.n_vertices:
            raise ValueError("one dimension per vertex required")
        if len(twist.dims) != quiver.n_arrows:
            raise ValueError("one twist dimension per arrow required")
        if len(phi) != quiver.n_arrows:
            raise ValueError("one matrix per arrow required")
        dims = tuple(int(d) for d in dims)
        if any(d < 0 for d in dims):
            raise ValueError("vertex dimensions must be non-negative")
        for a, m in enumerate(phi):
            t, h = quiver.arrows[a]
            want = (dims[h], twist[a] * dims[t])
            if m.field != field:
                raise ValueError(f"phi[{a}] is over the wrong field")
            if m.shape != want:
                raise ValueError(
                    f"phi[{a}] has shape {m.shape}, expected {want}"
                )
        self.quiver = quiver
        self.twist = twist
        self.field = field
        self.dims = dims
        self.phi = tuple(phi)

    # -- structure ---------------------------------------------------------

    def total_dim(self) -> int:
        return sum(self.dims)

    def arrow_block(self, a: int, m_index: int) -> ExactMatrix:
        """Column block of phi_a for one basis vector of M_a."""
        t = self.quiver.tail(a)
        d = self.dims[t]
        return self.phi[a].submatrix(0, self.dims[self.quiver.head(a)],
                                     m_index * d, (m_index + 1) * d)

    def compatible_with(self, other: "TwistedRep") -> None:
        if (self.quiver != other.quiver or self.twist != other.twist
                or self.field != other.field):
            raise IncompatibleError(
                "representations live over different quivers, twists or fields"
            )

    @staticmethod
    def zero_maps(quiver: Quiver, twist: TwistData, field: FieldSpec,
                  dims: Sequence[int]) -> "TwistedRep":
        phi = [
            ExactMatrix.zeros(field, dims[h], twist[a] * dims[t])
            for a, (t, h) in enumerate(quiver.arrows)
        ]
        return TwistedRep(quiver, twist, field, dims, phi)


def act_path(rep: TwistedRep, path: Path, m_index: int, vec: Sequence,
             at_vertex: Optional[int] = None) -> list:
    """Action of the basis element m_index of M_p on a vector.

    With `at_vertex` given, a vector living at a vertex other than tail(p)
    is annihilated (the algebra's "0 otherwise"); the result then lives in
    V_{head(p)}.  Without it, the vector is taken to live at tail(p).
    """
    field = rep.field
    if at_vertex is not None and at_vertex != path.tail:
        if len(vec) != rep.dims[at_vertex]:
            raise ValueError("vector length does not match its vertex")
        return [field.zero()] * rep.dims[path.head]
    if len(vec) != rep.dims[path.tail]:
        raise ValueError("vector length does not match tail(p)")
    basis = PathBasis(rep.twist, path)
    if not 0 <= m_index < basis.dim:
        raise IndexError(f"tensor index {m_index} out of range")
    w = [field.element(x) for x in vec]
    for a, d in zip(path.arrows, basis.digits(m_index)):
        w = rep.arrow_block(a, d).apply(w)
    return w


def path_matrix(rep: TwistedRep, path: Path, m_index: int) -> ExactMatrix:
    """Matrix of act_path(·): V_{tail(p)} -> V_{head(p)}."""
    basis = PathBasis(rep.twist, path)
    if not 0 <= m_index < basis.dim:
        raise IndexError(f"tensor index {m_index} out of range")
    m = ExactMatrix.identity(rep.field, rep.dims[path.tail])
    for a, d in zip(path.arrows, basis.digits(m_index)):
        m = rep.arrow_block(a, d) @ m
    return m


class RepMorphism:
    """A vertex-indexed family of matrices intertwining two representations."""

    def __init__(self, source: TwistedRep, target: TwistedRep,
                 blocks: Sequence[ExactMatrix]):
        source.compatible_with(target)
        if len(blocks) != source.quiver.n_vertices:
            raise ValueError("one block per vertex required")
        for i, b in enumerate(blocks):
            if b.shape != (target.dims[i], source.dims[i]):
                raise ValueError(
                    f"block {i} has shape {b.shape}, expected "
                    f"{(target.dims[i], source.dims[i])}"
                )
        self.source = source
        self.target = target
        self.blocks = tuple(blocks)

    def is_morphism(self) -> bool:
        """Exact check of the intertwining squares f∘phi = psi∘(1⊗f)."""
        for a in range(self.source.quiver.n_arrows):
            t, h = self.source.quiver.arrows[a]
            m = self.source.twist[a]
            lhs = self.blocks[h] @ self.source.phi[a]
            rhs = self.target.phi[a] @ kron(
                ExactMatrix.identity(self.source.field, m), self.blocks[t]
            )
            if lhs != rhs:
                return False
        return True


def _hom_layout(V: TwistedRep, W: TwistedRep):
    """Offsets of the vectorised blocks of ⊕_i Hom(V_i, W_i)."""
    offsets = []
    pos = 0
    for i in range(V.quiver.n_vertices):
        offsets.append(pos)
        pos += V.dims[i] * W.dims[i]
    return offsets, pos


def _arrow_layout(V: TwistedRep, W: TwistedRep):
    """Offsets of the vectorised blocks of ⊕_a Hom(M_a⊗V_ta, W_ha)."""
    offsets = []
    pos = 0
    for a, (t, h) in enumerate(V.quiver.arrows):
        offsets.append(pos)
        pos += V.twist[a] * V.dims[t] * W.dims[h]
    return offsets, pos


def delta_matrix(V: TwistedRep, W: TwistedRep) -> ExactMatrix:
    """Matrix of (f_i) -> (f_ha ∘ phi_a − psi_a ∘ (1⊗f_ta)).

    Domain: ⊕_i Hom(V_i, W_i); codomain: ⊕_a Hom(M_a⊗V_ta, W_ha); both in
    column-major block coordinates.  Its kernel is Hom(V, W) and its
    cokernel computes Ext^1 over a field.
    """
    V.compatible_with(W)
    voff, vdim = _hom_layout(V, W)
    aoff, adim = _arrow_layout(V, W)
    out = MatrixBuilder(V.field, adim, vdim)
    for a, (t, h) in enumerate(V.quiver.arrows):
        m = V.twist[a]
        # f_ha ∘ phi_a: right composition with phi_a on vec(f_ha)
        if V.dims[h] * W.dims[h] > 0:
            out.add_block(aoff[a], voff[h], vec_precompose(V.phi[a], W.dims[h]))
        # psi_a ∘ (1⊗f_ta)
        if V.dims[t] * W.dims[t] > 0:
            block = vec_twisted_postcompose(W.phi[a], m, V.dims[t])
            out.add_block(aoff[a], voff[t], block.scale(-1))
    return out.build()


def hom_space(V: TwistedRep, W: TwistedRep) -> List[RepMorphism]:
    """Basis of Hom(V, W) = ker(delta_matrix), as verified morphisms."""
    delta = delta_matrix(V, W)
    voff, _ = _hom_layout(V, W)
    morphisms = []
    for vec in kernel_basis(delta):
        blocks = [
            unvec_matrix(V.field, vec, W.dims[i], V.dims[i], voff[i])
            for i in range(V.quiver.n_vertices)
        ]
        f = RepMorphism(V, W, blocks)
        assert f.is_morphism()
        morphisms.append(f)
    return morphisms


def ext1_dim(V: TwistedRep, W: TwistedRep) -> int:
    """dim Ext^1(V, W) = dim coker(delta_matrix); Ext^q vanishes for q >= 2."""
    return cokernel_dimension(delta_matrix(V, W))


def identity_morphism(V: TwistedRep) -> RepMorphism:
    blocks = [ExactMatrix.identity(V.field, d) for d in V.dims]
    return RepMorphism(V, V, blocks)


# -- extensions --------------------------------------------------------------

def build_extension(V: TwistedRep, W: TwistedRep,
                    eta: Sequence[ExactMatrix]) -> TwistedRep:
    """The extension 0 -> W -> E -> V -> 0 classified by eta = (eta_a).

    E_i = W_i ⊕ V_i and each M_a-block of the arrow map is
    [[psi_a, eta_a], [0, phi_a]].  The canonical inclusion and projection
    are verified to be morphisms.
    """
    V.compatible_with(W)
    if len(eta) != V.quiver.n_arrows:
        raise ValueError("one eta block per arrow required")
    field = V.field
    dims = [W.dims[i] + V.dims[i] for i in range(V.quiver.n_vertices)]
    phi = []
    for a, (t, h) in enumerate(V.quiver.arrows):
        m = V.twist[a]
        if eta[a].shape != (W.dims[h], m * V.dims[t]):
            raise ValueError(
                f"eta[{a}] has shape {eta[a].shape}, expected "
                f"{(W.dims[h], m * V.dims[t])}"
            )
        out = MatrixBuilder(field, dims[h], m * dims[t])
        dwt, dvt = W.dims[t], V.dims[t]
        for j in range(m):
            c0 = j * (dwt + dvt)
            out.add_block(0, c0, W.arrow_block(a, j))
            out.add_block(0, c0 + dwt,
                          eta[a].submatrix(0, W.dims[h], j * dvt, (j + 1) * dvt))
            out.add_block(W.dims[h], c0 + dwt, V.arrow_block(a, j))
        phi.append(out.build())
    E = TwistedRep(V.quiver, V.twist, field, dims, phi)
    assert RepMorphism(W, E, [_inclusion_block(field, W.dims[i], V.dims[i])
                              for i in range(V.quiver.n_vertices)]).is_morphism()
    assert RepMorphism(E, V, [_projection_block(field, W.dims[i], V.dims[i])
                              for i in range(V.quiver.n_vertices)]).is_morphism()
    return E


def _inclusion_block(field: FieldSpec, dw: int, dv: int) -> ExactMatrix:
    out = MatrixBuilder(field, dw + dv, dw)
    out.add_block(0, 0, ExactMatrix.identity(field, dw))
    return out.build()


def _projection_block(field: FieldSpec, dw: int, dv: int) -> ExactMatrix:
    out = MatrixBuilder(field, dv, dw + dv)
    out.add_block(0, dw, ExactMatrix.identity(field, dv))
    return out.build()


def is_split_extension(E: TwistedRep, V: TwistedRep, W: TwistedRep) -> bool:
    """True iff some morphism s: V -> E satisfies proj ∘ s = id_V.

    Decided exactly, by solving the combined linear system of intertwining
    equations and the section condition.
    """
    V.compatible_with(W)
    V.compatible_with(E)
    field = V.field
    n = V.quiver.n_vertices
    # unknowns: vec(s_i), s_i of shape E_i x V_i
    soff = []
    pos = 0
    for i in range(n):
        soff.append(pos)
        pos += V.dims[i] * E.dims[i]
    total_cols = pos

    rows = 0
    for a, (t, h) in enumerate(V.quiver.arrows):
        rows += V.twist[a] * V.dims[t] * E.dims[h]
    for i in range(n):
        rows += V.dims[i] * V.dims[i]

    system = MatrixBuilder(field, rows, total_cols)
    rhs = [field.zero()] * rows
    r = 0
    for a, (t, h) in enumerate(V.quiver.arrows):
        m = V.twist[a]
        block_rows = m * V.dims[t] * E.dims[h]
        if V.dims[h] * E.dims[h] > 0:
            system.add_block(r, soff[h], vec_precompose(V.phi[a], E.dims[h]))
        if V.dims[t] * E.dims[t] > 0:
            system.add_block(
                r, soff[t],
                vec_twisted_postcompose(E.phi[a], m, V.dims[t]).scale(-1),
            )
        r += block_rows
    for i in range(n):
        proj = _projection_block(field, W.dims[i], V.dims[i])
        if V.dims[i] > 0:
            system.add_block(r, soff[i], kron(
                ExactMatrix.identity(field, V.dims[i]), proj
            ))
            ident = vec_matrix(ExactMatrix.identity(field, V.dims[i]))
            for k, x in enumerate(ident):
                rhs[r + k] = x
        r += V.dims[i] * V.dims[i]
    return solve(system.build(), rhs) is not None


def ext1_classes(V: TwistedRep, W: TwistedRep) -> List[List[ExactMatrix]]:
    """Representatives eta = (eta_a) of a basis of coker(delta) = Ext^1(V, W)."""
    delta = delta_matrix(V, W)
    aoff, _ = _arrow_layout(V, W)
    classes = []
    for vec in cokernel_representatives(delta):
        etas = []
        for a, (t, h) in enumerate(V.quiver.arrows):
            m = V.twist[a]
            etas.append(unvec_matrix(V.field, vec, W.dims[h], m * V.dims[t], aoff[a]))
        classes.append(etas)
    return classes
