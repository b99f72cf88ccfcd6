"""Export the 1-norm minimization over symmetric generalized inverses as a
text LP file.

The model, for a symmetric n x n matrix A with entries a_kl:

    minimize    sum_ij t_i_j
    subject to  t_i_j - h_i_j >= 0          (tp_i_j)
                t_i_j + h_i_j >= 0          (tm_i_j)
                sum_ij a_ki a_jl h_i_j = a_kl   for all k, l   (gi_k_l)
                h_i_j - h_j_i = 0           for i < j          (sym_i_j)
    with every h_i_j free and t_i_j >= 0.

Variables are named h_i_j / t_i_j with 1-based row-major indices, emitted in
deterministic order. Feasibility rows whose coefficients are all zero (zero
row/column of A) are trivially satisfied and omitted.
"""

from .validation import check_symmetric

_WRAP = 200  # wrap expression lines near this many characters


def _num(v):
    return f"{v:.17g}"


def _emit_expr(out, head, terms, tail):
    line = head
    for term in terms:
        if len(line) + len(term) + 1 > _WRAP:
            out.append(line)
            line = "   " + term
        else:
            line += " " + term
    out.append(line + tail)


def export_lp(A, path):
    """Write the LP-format encoding of the symmetric-inverse 1-norm problem."""
    A = check_symmetric(A)
    n = A.shape[0]

    out = ["\\ vector 1-norm minimization over symmetric generalized inverses",
           f"\\ matrix size {n} x {n}",
           "Minimize"]
    terms = [f"+ t_{i + 1}_{j + 1}" for i in range(n) for j in range(n)]
    _emit_expr(out, " obj:", terms, "")

    out.append("Subject To")
    for i in range(n):
        for j in range(n):
            hv, tv = f"h_{i + 1}_{j + 1}", f"t_{i + 1}_{j + 1}"
            out.append(f" tp_{i + 1}_{j + 1}: {tv} - {hv} >= 0")
            out.append(f" tm_{i + 1}_{j + 1}: {tv} + {hv} >= 0")
    for k in range(n):
        for l in range(n):
            terms = []
            for i in range(n):
                aki = A[k, i]
                if aki == 0.0:
                    continue
                for j in range(n):
                    coef = aki * A[j, l]
                    if coef == 0.0:
                        continue
                    sign = "-" if coef < 0 else "+"
                    terms.append(f"{sign} {_num(abs(coef))} h_{i + 1}_{j + 1}")
            if not terms:
                continue  # all-zero row: rhs is zero as well
            _emit_expr(out, f" gi_{k + 1}_{l + 1}:", terms, f" = {_num(A[k, l])}")
    for i in range(n):
        for j in range(i + 1, n):
            out.append(f" sym_{i + 1}_{j + 1}: h_{i + 1}_{j + 1} - h_{j + 1}_{i + 1} = 0")

    out.append("Bounds")
    for i in range(n):
        for j in range(n):
            out.append(f" h_{i + 1}_{j + 1} free")
    out.append("End")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(out) + "\n")
