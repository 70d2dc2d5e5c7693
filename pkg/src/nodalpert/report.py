"""Assemble analyses into a JSON-ready dictionary.

Floats are rounded to 12 significant digits and negative zero is normalized,
so identical inputs serialize to identical bytes.
"""

import json
from collections import Counter

import numpy as np

from .nodal import MAX_ZEROS, ZERO, pattern_str, sign_pattern
from .oracle import verify_instance
from .perturb_multi import split_group, verify_multi_bounds
from .perturb_simple import BudgetError, CertificationError, certify_simple
from .spectral import RANK_TOL, ZERO_TOL, default_group_tol, eig_sym, group_eigenvalues

SCHEMA = 1


def num(x):
    x = float(f"{float(x):.12g}")
    return 0.0 if x == 0 else x


def nums(a):
    return [num(x) for x in np.ravel(a)]


def sparse_triplets(m1):
    m1 = np.asarray(m1)
    return [[int(i), int(j), num(m1[i, j])] for i, j in np.argwhere(m1 != 0) if i <= j]


def profile_dict(prof):
    if prof is None:
        return None
    counts = Counter(int(x) for x in prof.snd_sorted)
    return {"ell": prof.ell, "zeros": list(prof.zeros), "un": prof.un, "un_max": prof.un_max,
            "snd_counts": [[v, counts[v]] for v in sorted(counts)],
            "witnesses": {str(v): pattern_str(s) for v, s in sorted(prof.witnesses.items())}}


def certificate_dict(c):
    return {"k": c.k, "target": list(c.target), "signing": pattern_str(c.signing),
            "snd": c.snd_value, "holds": c.holds,
            "chain": [{"eps": num(s.eps), "m1": sparse_triplets(s.m1), "zeros_before": s.zeros_before,
                       "zeros_after": s.zeros_after, "eigenvalue": num(s.eigenvalue), "gap": num(s.gap),
                       "halvings": s.halvings} for s in c.chain]}


def analyze(g, M, k=None, group_tol=None, max_enum=MAX_ZEROS, certify=False, split_multi=False,
            zero_tol=ZERO_TOL, seed=None, matrix_source="file"):
    """Run every analysis on (g, M) and return the report dictionary."""
    spec = eig_sym(M.m)
    tol = default_group_tol(spec) if group_tol is None else group_tol
    groups = group_eigenvalues(spec, tol)
    ver = verify_instance(g, M, tol, zero_tol, max_enum)
    indices = range(1, g.n + 1) if k is None else [k]
    if k is not None and not 1 <= k <= g.n:
        raise ValueError(f"--k must lie in 1..{g.n}")
    vectors = []
    for idx in indices:
        r = ver.records[idx - 1]
        vectors.append({"k": idx, "group_k": r.group_k, "m": r.m, "eigenvalue": num(r.eigenvalue),
                        "pattern": pattern_str(r.pattern), "snd": r.snd, "wnd": r.wnd,
                        "classification": r.classification.as_dict(),
                        "urschel_profile": profile_dict(r.profile), "skipped": r.skipped,
                        "checks": {name: ok for name, ok in r.checks.items()}})
    rep = {
        "schema": SCHEMA,
        "input": {"n": g.n, "edges": [list(e) for e in g.edges], "matrix": matrix_source, "seed": seed},
        "tolerances": {"group_tol": num(tol), "zero_tol": zero_tol, "rank_tol": RANK_TOL, "max_enum": max_enum},
        "spectrum": {"eigenvalues": nums(spec.values),
                     "eigenvectors": [nums(spec.vector(i)) for i in range(1, g.n + 1)]},
        "groups": [{"k": gr.k, "m": gr.m, "value": num(gr.value), "ambiguous": gr.ambiguous} for gr in groups],
        "vectors": vectors,
    }
    if certify:
        certs = []
        for gr in groups:
            if gr.m != 1 or (k is not None and gr.k != k):
                continue
            if not np.any(sign_pattern(spec.vector(gr.k), zero_tol) == ZERO):
                continue
            try:
                try:
                    cs = certify_simple(g, M, gr.k, "all", group_tol=tol, zero_tol=zero_tol)
                    mode = "all"
                except BudgetError:
                    cs = certify_simple(g, M, gr.k, "pm", group_tol=tol, zero_tol=zero_tol)
                    mode = "pm"
            except CertificationError as exc:
                certs.append({"k": gr.k, "error": str(exc),
                              "diagnostics": {key: str(v) for key, v in sorted(exc.diagnostics.items())}})
                continue
            certs.append({"k": gr.k, "mode": mode, "distinct_signings": len({pattern_str(c.signing) for c in cs}),
                          "certificates": [certificate_dict(c) for c in cs]})
        rep["certificates"] = certs
    if split_multi:
        multi = []
        for gr in groups:
            if gr.m < 2 or (k is not None and not gr.k <= k < gr.k + gr.m):
                continue
            sb = split_group(g, M, gr, spec)
            br = verify_multi_bounds(g, M, sb, max_enum, zero_tol)
            multi.append({"k": sb.k, "m": sb.m,
                          "d": [[int(i), num(sb.d[i])] for i in np.flatnonzero(sb.d)],
                          "lambda_prime": nums(sb.lambda_prime),
                          "basis": [nums(sb.vector(j)) for j in range(sb.m)],
                          "bounds": [{"j": e.j, "bound": e.bound, "un": e.un, "status": e.status,
                                      "orderings": e.note} for e in br.entries],
                          "passed": br.passed})
        rep["multi"] = multi
    fails = [f"k={i}: {name}" for i, name in ver.failures]
    for c in rep.get("certificates", []):
        if "error" in c:
            continue
        fails += [f"certificate k={c['k']}: snd {x['snd']} > k" for x in c["certificates"] if not x["holds"]]
    for s in rep.get("multi", []):
        fails += [f"split k={s['k']} j={b['j']}: un {b['un']} > {b['bound']}" for b in s["bounds"]
                  if b["status"] == "fail"]
    uncertified = [c["k"] for c in rep.get("certificates", []) if "error" in c]
    rep["summary"] = {"passed": not fails, "failures": fails, "uncertified": uncertified}
    return rep


def family_comparison(inst, spec):
    rows = []
    tol = 1e-8 * (1 + np.abs(inst.M.m).sum(axis=1).max())
    for e in inst.expected:
        got = spec.value(e.k)
        row = {"k": e.k, "expected": num(e.value), "computed": num(got), "formula": e.formula,
               "match": bool(abs(got - e.value) <= tol)}
        if e.vector is not None:
            v = np.asarray(e.vector)
            row["vector_residual"] = num(np.abs(inst.M.m @ v - e.value * v).max())
        rows.append(row)
    return rows


def dumps(rep):
    return json.dumps(rep, indent=2) + "\n"
