"""Machine-checkable certificates for the main results.

Each verifier runs the engine on one instance (quiver, m) and records the
exact values it computed together with a pass/fail verdict.  Certificates
are plain data and serialize deterministically, so identical inputs and
seeds give identical bytes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .homology import (
    _flatten,
    cosyzygy,
    decompose_with_maps,
    dominant_dimension,
    end_algebra,
    ext1_dim,
    global_dimension,
    is_isomorphic,
    right_approximation,
)
from .linalg import EchelonSpace
from .modules import (
    ModuleRep,
    hom_basis,
    kernel,
    projective_module,
    radical_submodule,
    simple_module,
)
from .homology import stable_hom_dim
from .quiver import Quiver
from .replicated import (
    GeneratorBundle,
    auslander_generator,
    build_replicated,
    embed,
    minimal_cogenerator,
    projective_injectives,
    restrict_from_ambient,
    sigma_layers,
)


@dataclass
class Certificate:
    claim: str
    instance: dict
    values: dict
    verdict: bool
    witnesses: Optional[dict] = None

    def to_dict(self) -> dict:
        out = {
            "claim": self.claim,
            "instance": self.instance,
            "values": self.values,
            "verdict": "pass" if self.verdict else "fail",
        }
        if self.witnesses is not None:
            out["witnesses"] = self.witnesses
        return out


def _instance(q: Quiver, m: int) -> dict:
    return {
        "vertices": list(q.vertices),
        "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in q.arrows],
        "m": m,
    }


def default_cap(m: int) -> int:
    return 4 * m + 4


def verify_theorem_3_3(q: Quiver, m: int, cap: Optional[int] = None, seed: int = 0,
                       bundle: Optional[GeneratorBundle] = None):
    """gl.dim End(M) <= 3 for the canonical generator-cogenerator M."""
    cap = cap if cap is not None else default_cap(m)
    if bundle is None:
        bundle = auslander_generator(q, m, cap=cap, seed=seed)
    e = end_algebra(bundle.module, summands=bundle.end_summands(), seed=seed)
    g = global_dimension(e, cap)
    cert = Certificate(
        claim="theorem_3_3_repdim",
        instance=_instance(q, m),
        values={
            "t_gl_dim_replicated": bundle.t,
            "num_summands": len(bundle.summands),
            "dim_end": e.dim,
            "gl_dim_end_M": g.to_json(),
        },
        verdict=g.at_most(3),
    )
    return cert, bundle


def verify_theorem_3_5(q: Quiver, m: int, cap: Optional[int] = None):
    """dom.dim A^(m) >= m, and the proof-level bound dom.dim >= t - 1."""
    if m < 1:
        raise ValueError("the dominant-dimension bound needs m >= 1")
    cap = cap if cap is not None else default_cap(m)
    r = build_replicated(q, m)
    t = global_dimension(r.algebra, cap)
    dom = dominant_dimension(r.algebra, cap)
    theorem = dom.at_least(m)
    proof_bound = t.exact and dom.at_least(t.value - 1)
    return Certificate(
        claim="theorem_3_5_domdim",
        instance=_instance(q, m),
        values={
            "t_gl_dim_replicated": t.to_json(),
            "dominant_dim": dom.to_json(),
            "theorem_dom_ge_m": theorem,
            "proof_bound_dom_ge_t_minus_1": proof_bound,
        },
        verdict=theorem and proof_bound,
    )


def verify_gl_dim_bounds(q: Quiver, m: int, cap: Optional[int] = None):
    """m + gl.dim A <= gl.dim A^(m) <= (m+1) gl.dim A + m."""
    cap = cap if cap is not None else default_cap(m)
    r = build_replicated(q, m)
    gl_a = global_dimension(r.base, cap)
    gl_m = global_dimension(r.algebra, cap)
    ok = (
        gl_a.exact and gl_m.exact
        and m + gl_a.value <= gl_m.value <= (m + 1) * gl_a.value + m
    )
    return Certificate(
        claim="gl_dim_sandwich",
        instance=_instance(q, m),
        values={
            "gl_dim_base": gl_a.to_json(),
            "gl_dim_replicated": gl_m.to_json(),
            "lower": m + gl_a.value,
            "upper": (m + 1) * gl_a.value + m,
        },
        verdict=ok,
    )


def verify_lemma_2_4(bundle: GeneratorBundle, x: ModuleRep, x_label: str,
                     seed: int = 0) -> Certificate:
    """A verified length-<=2 add(M) resolution of x with Hom(L,-)-exactness.

    Builds the minimal right add(M)-approximation g: M1 -> x, checks that g
    is onto, that K = ker g lies in add M, that 0 -> Hom(L,K) -> Hom(L,M1)
    -> Hom(L,x) -> 0 is exact for every summand L of M, and the Wakamatsu
    vanishing Ext^1(L, K) = 0 for the L the theorem's argument draws on:
    projectives, projective-injectives and the cosyzygy layers up to the
    approximation's own layer.  (add M is not closed under extensions, so
    the vanishing against *every* summand can fail; it is reported as a
    separate value.)
    """
    q = bundle.replicated.quiver
    mods = [s.module for s in bundle.summands]
    labels = [s.label for s in bundle.summands]
    g = right_approximation(mods, x)
    epi = g.is_surjective()
    kmod, _ = kernel(g)
    kernel_labels: list[str] = []
    in_add = True
    if kmod.dim:
        for piece, _, _ in decompose_with_maps(kmod, seed=seed):
            for lab, cand in zip(labels, mods):
                if is_isomorphic(piece, cand, seed=seed) is not None:
                    kernel_labels.append(lab)
                    break
            else:
                kernel_labels.append("<not in add M>")
                in_add = False
    hom_exact = True
    for l in mods:
        dk = len(hom_basis(l, kmod))
        hm = hom_basis(l, g.source)
        dx = len(hom_basis(l, x))
        # rank of Hom(L, M1) -> Hom(L, x); exactness in the middle is the
        # dimension count, surjectivity on the right is the rank
        sp = EchelonSpace(x.dim * l.dim)
        rank = 0
        for phi in hm:
            if sp.add(_flatten(g.matrix @ phi.matrix)):
                rank += 1
        if rank != dx or len(hm) != dk + dx:
            hom_exact = False
            break
    src_types = g.source.extras.get("approximation_summands", [])
    src_counts: dict[str, int] = {}
    for t in src_types:
        src_counts[labels[t]] = src_counts.get(labels[t], 0) + 1
    approx_layer = max((bundle.summands[t].layer for t in src_types), default=0)
    ext_values = {s.label: ext1_dim(s.module, kmod) for s in bundle.summands}
    wak_scoped = all(
        ext_values[s.label] == 0
        for s in bundle.summands
        if s.layer <= approx_layer and not s.label.startswith("inj:")
    )
    wak_all = all(v == 0 for v in ext_values.values())
    return Certificate(
        claim="lemma_2_4_witness",
        instance=_instance(q, bundle.replicated.m),
        values={
            "target": x_label,
            "target_dims": x.vertex_dims(),
            "epi": epi,
            "kernel_in_add_M": in_add,
            "hom_exact_all_summands": hom_exact,
            "wakamatsu_scoped_vanishing": wak_scoped,
            "wakamatsu_all_summands": wak_all,
        },
        verdict=epi and in_add and hom_exact and wak_scoped,
        witnesses={
            "approximation_source": dict(sorted(src_counts.items())),
            "kernel_summands": sorted(kernel_labels),
            "kernel_dims": kmod.vertex_dims(),
        },
    )


def lemma_2_4_inventory(bundle: GeneratorBundle, seed: int = 0):
    """The sampled targets: Sigma-ladder summands, simples, and radicals of
    the indecomposable projectives, all as A^(m)-modules."""
    r = bundle.replicated
    q = r.quiver
    m = r.m
    out: list[tuple[str, ModuleRep]] = []
    if bundle.t >= 2:
        amb, layers = sigma_layers(q, m, bundle.t - 1, seed=seed)
        for layer in layers:
            for idx, (mod, ok) in enumerate(zip(layer.modules, layer.in_a_m)):
                if ok:
                    out.append((f"sigma{layer.k}.{idx}", restrict_from_ambient(mod, amb, r)))
    else:
        for v in range(len(q.vertices)):
            out.append((f"sigma0.{v}", projective_module(r.algebra, v)))
    for idx, (lab, _) in enumerate(r.algebra.idempotents):
        out.append((f"simple:{lab}", simple_module(r.algebra, idx)))
    for idx, (lab, _) in enumerate(r.algebra.idempotents):
        rad, _ = radical_submodule(projective_module(r.algebra, idx))
        if rad.dim:
            out.append((f"rad_proj:{lab}", rad))
    return out


def verify_lemma_2_4_inventory(bundle: GeneratorBundle, seed: int = 0):
    """One lemma-2.4 certificate per inventory module."""
    return [
        verify_lemma_2_4(bundle, x, lab, seed=seed)
        for lab, x in lemma_2_4_inventory(bundle, seed=seed)
    ]


def verify_ext_stablehom(q: Quiver, m: int, samples: int = 0, seed: int = 0,
                         cap: Optional[int] = None) -> Certificate:
    """dim Ext^1(Y, X) = dim StHom(Y, Omega^{-1} X) over the ambient algebra,
    for all built (Y, X) with X having projective-injective envelope, plus
    the vanishing of stable maps Omega^{-i}(projective) -> Omega^{-j}(A-module)
    for i < j."""
    amb = build_replicated(q, 2 * m + 1)
    pis = [mod for _, mod in projective_injectives(amb)]
    nv = len(q.vertices)
    base = amb.base
    # cosyzygy chains of embedded projectives and simples, staying below the top copy
    depth = 2 * m
    proj_chains = []
    for v in range(nv):
        chain = [embed(projective_module(base, v), 0, amb)]
        for _ in range(depth):
            nxt = cosyzygy(chain[-1])
            if nxt.dim == 0:
                break
            chain.append(nxt)
        proj_chains.append(chain)
    simple_chains = []
    for v in range(nv):
        chain = [embed(simple_module(base, v), 0, amb)]
        for _ in range(depth):
            nxt = cosyzygy(chain[-1])
            if nxt.dim == 0:
                break
            chain.append(nxt)
        simple_chains.append(chain)
    inventory: list[ModuleRep] = []
    for chain in proj_chains + simple_chains:
        inventory.extend(chain)
    inventory.extend(pis)

    def envelope_is_pi(x: ModuleRep) -> bool:
        from .modules import injective_envelope, is_projective_module

        if x.dim == 0:
            return False
        i, _ = injective_envelope(x)
        return is_projective_module(i)

    xs = [x for x in inventory if envelope_is_pi(x)]
    pairs = [(y, x) for y in inventory if y.dim for x in xs]
    if samples and samples < len(pairs):
        rng = random.Random(seed)
        pairs = rng.sample(pairs, samples)
    identity_ok = True
    checked = 0
    for y, x in pairs:
        lhs = ext1_dim(y, x)
        rhs = stable_hom_dim(y, cosyzygy(x), pis)
        checked += 1
        if lhs != rhs:
            identity_ok = False
            break
    lemma32_ok = True
    checked32 = 0
    for chain in proj_chains:
        for i, yi in enumerate(chain):
            for xchain in proj_chains + simple_chains:
                for j in range(i + 1, len(xchain)):
                    if yi.dim and xchain[j].dim:
                        checked32 += 1
                        if stable_hom_dim(yi, xchain[j], pis) != 0:
                            lemma32_ok = False
    return Certificate(
        claim="ext1_equals_stable_hom",
        instance=_instance(q, m),
        values={
            "ambient_copies": 2 * m + 1,
            "pairs_checked": checked,
            "identity_holds": identity_ok,
            "lemma_3_2_pairs_checked": checked32,
            "lemma_3_2_vanishing": lemma32_ok,
        },
        verdict=identity_ok and lemma32_ok,
    )


def verify_example_3_4(seed: int = 0, cap: Optional[int] = None):
    """The golden instance: the duplicated Kronecker algebra.

    Reproduces gl.dim End(M) = 3 and gl.dim End(M_0) = 5 exactly, and the
    ten summands of M with their dimension vectors.
    """
    from .quiver import kronecker

    q = kronecker()
    cap = cap if cap is not None else 8
    bundle = auslander_generator(q, 1, cap=cap, seed=seed)
    e = end_algebra(bundle.module, summands=bundle.end_summands(), seed=seed)
    g = global_dimension(e, cap)
    bundle0 = minimal_cogenerator(q, 1, cap=cap, seed=seed)
    e0 = end_algebra(bundle0.module, summands=bundle0.end_summands(), seed=seed)
    g0 = global_dimension(e0, cap)
    expected = sorted([
        (1, 0, 0, 0), (2, 1, 0, 0), (0, 0, 0, 1), (0, 0, 1, 2), (1, 2, 1, 0),
        (0, 1, 2, 1), (0, 2, 1, 0), (0, 3, 2, 0), (0, 0, 3, 2), (0, 0, 4, 3),
    ])
    got = sorted(tuple(s.dims) for s in bundle.summands)
    dims_match = got == expected
    verdict = (
        g.exact and g.value == 3
        and g0.exact and g0.value == 5
        and len(bundle.summands) == 10
        and dims_match
    )
    cert = Certificate(
        claim="example_3_4_golden",
        instance=_instance(q, 1),
        values={
            "gl_dim_end_M": g.to_json(),
            "gl_dim_end_M0": g0.to_json(),
            "num_summands_M": len(bundle.summands),
            "num_summands_M0": len(bundle0.summands),
            "summand_dims_match_golden": dims_match,
        },
        verdict=verdict,
        witnesses={"summand_dims": [list(d) for d in got]},
    )
    return cert, bundle, bundle0
