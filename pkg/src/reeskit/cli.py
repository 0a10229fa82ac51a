"""Command line front end: ``reeskit run FILE [--json]``, ``reeskit verify``, ``reeskit repl``.

Exit codes: 0 success, 1 error, 2 when ``verify`` finds a mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import verify as verify_mod
from .dsl import DSLError, Parser, Script, Stmt, evaluate, parse
from .fpmod import (
    annihilator, base_change, coker, direct_sum, dual, exterior_power, format_module,
    free, ideal_module, minimize, present, torsionless_quotient, torsionless_via_flat,
)
from .groebner import Ideal, ring_map_kernel
from .polycore import DEGREVLEX, GF, LEX, QQ, AffineRing, PolyRing, RingMap, as_affine
from .projgeo import (
    assofrees_check, closure_of_preimage, is_proj_empty, nash_transform,
    preimage_is_dense, proj_charts, schematically_dense,
)
from .rees import (
    algebra_image_quotient, check_injectivity_flat, compare_base_change, graded_piece,
    rees_presentation, sym_presentation, sym_to_rees_quotient, versal_map, view_over,
)


class ScriptError(Exception):
    def __init__(self, stmt: Stmt, message: str):
        super().__init__(f"line {stmt.line}, column {stmt.col}: {stmt.text}: {message}")


class VerifyMismatch(Exception):
    pass


def _join(items) -> str:
    return "[" + ", ".join(str(i) for i in items) + "]"


def _algebra_fields(G) -> dict:
    return {
        "base": str(G.base),
        "variables": ", ".join(G.tvars) if G.tvars else "(none)",
        "ideal": str(G.ideal),
    }


def _chart_fields(c) -> dict:
    return {
        "chart": c.origin.tvars[c.index],
        "variables": ", ".join(c.ideal.ring.variables),
        "ideal": str(c.ideal),
    }


class Interpreter:
    """Executes statements against a name environment, one output block each."""

    def __init__(self):
        self.env: dict[str, object] = {}
        self.kinds: dict[str, str] = {}
        self.flat: set[str] = set()

    # evaluation helpers ------------------------------------------------------
    def poly(self, e, ring):
        return evaluate(e, as_affine(ring).ambient)

    def ideal(self, ref, ring) -> Ideal:
        kind, val = ref
        if kind == "name":
            return self.env[val]
        R = as_affine(ring)
        return Ideal(R, [self.poly(e, R) for e in val])

    def module(self, expr):
        kind = expr[0]
        if kind == "name":
            return self.env[expr[1]]
        if kind == "coker":
            R = self.env[expr[1]]
            return coker(R, [[self.poly(e, R) for e in row] for row in expr[2]])
        if kind == "image":
            R = self.env[expr[1]]
            rows = [[self.poly(e, R) for e in row] for row in expr[2]]
            ncols = len(rows[0]) if rows else 0
            return present([tuple(r[j] for r in rows) for j in range(ncols)], R, len(rows))
        if kind == "free":
            return free(self.env[expr[1]], expr[2])
        if kind == "idealmod":
            ring = self.env[expr[2]] if expr[2] else None
            return ideal_module(self.ideal(expr[1], ring))
        if kind == "dual":
            return dual(self.module(expr[1]))
        if kind == "tl":
            return torsionless_quotient(self.module(expr[1]))[0]
        if kind == "ext":
            return exterior_power(self.module(expr[2]), expr[1])
        if kind == "sum":
            return direct_sum(*[self.module(m) for m in expr[1]])
        if kind == "base":
            return base_change(self.module(expr[1]), self.env[expr[2]])
        raise AssertionError(kind)

    def algebra(self, expr):
        kind = expr[0]
        if kind == "rees":
            return rees_presentation(self.module(expr[1]))
        if kind == "sym":
            return sym_presentation(self.module(expr[1]))
        if kind == "nash":
            M = self.module(expr[1])
            return nash_transform(M, expr[2], self.ideal(expr[3], M.ring)).algebra
        if kind == "closure":
            G = self.algebra(expr[1])
            return closure_of_preimage(G, self.ideal(expr[2], G.base))
        raise AssertionError(kind)

    # statements ----------------------------------------------------------------
    def run(self, script: Script) -> list[dict]:
        out = []
        for stmt in script:
            out.extend(self.execute(stmt))
        return out

    def execute(self, stmt: Stmt) -> list[dict]:
        try:
            fields = getattr(self, "do_" + stmt.kind)(stmt.args)
        except (DSLError, VerifyMismatch):
            raise
        except (ValueError, ArithmeticError, RuntimeError) as exc:
            raise ScriptError(stmt, str(exc)) from exc
        if fields is None:
            return []
        if isinstance(fields, dict):
            fields = [fields]
        return [{"command": stmt.text, **f} for f in fields]

    def _bind(self, name, kind, value):
        self.env[name] = value
        self.kinds[name] = kind

    def do_ring(self, a):
        if a["parent"] is None:
            field = QQ if a["field"] == 0 else GF(a["field"])
            amb = PolyRing(field, a["vars"], LEX if a["order"] == "lex" else DEGREVLEX)
            R = AffineRing(amb, [])
        else:
            R = self.env[a["parent"]]
            if a["vars"]:
                clash = set(a["vars"]) & set(R.variables)
                if clash:
                    raise ValueError(f"variables {sorted(clash)} already in {R}")
                R = R.extend(a["vars"])
            if a["order"] == "lex":
                R = R.with_order(LEX)
        if a["relations"]:
            R = R.quotient([self.poly(e, R) for e in a["relations"]])
        self._bind(a["name"], "ring", R)

    def do_ideal(self, a):
        R = self.env[a["ring"]]
        self._bind(a["name"], "ideal", Ideal(R, [self.poly(e, R) for e in a["gens"]]))

    def do_module(self, a):
        self._bind(a["name"], "module", self.module(a["expr"]))

    def do_map(self, a):
        S, T = self.env[a["source"]], self.env[a["target"]]
        images = {}
        for v in S.variables:
            if v in a["images"]:
                e, tok = a["images"][v]
                images[v] = self.poly(e, T)
            elif v in T.variables:
                images[v] = T.ambient.var(v)
            else:
                raise ValueError(f"no image for {v!r} and no variable of that name in the target")
        for v, (_, tok) in a["images"].items():
            if v not in S.variables:
                raise DSLError(f"{v!r} is not a variable of {S}", tok.line, tok.col)
        self._bind(a["name"], "map", RingMap(S, T, images))

    def do_assume(self, a):
        self.flat.add(a["map"])

    def do_show(self, a):
        obj = self.env[a["name"]]
        kind = self.kinds[a["name"]]
        if kind == "module":
            return {"ring": str(obj.ring), "module": format_module(obj)}
        if kind == "ideal":
            return {"ring": str(obj.ring), "ideal": str(obj)}
        if kind == "map":
            return {"source": str(obj.source), "target": str(obj.target),
                    "images": ", ".join(f"{v} -> {f}" for v, f in obj.image_dict().items())}
        return {"ring": str(obj)}

    def do_gb(self, a):
        ring = self.env[a["ring"]] if "ring" in a else None
        I = self.ideal(a["ideal"], ring)
        return {"ring": str(I.ring), "ideal": str(I), "basis": _join(I.gb)}

    def do_rees(self, a):
        M = self.module(a["module"])
        v = versal_map(M)
        G = rees_presentation(M, v)
        return {**_algebra_fields(G), "versal rank": str(v.rank)}

    def do_sym(self, a):
        return _algebra_fields(sym_presentation(self.module(a["module"])))

    def do_algtl(self, a):
        if "module" in a:
            return _algebra_fields(sym_to_rees_quotient(self.module(a["module"])))
        psi = self.env[a["via"]]
        Q = algebra_image_quotient(self.env[a["ring"]], psi)
        return {"ring": str(Q), "kernel": str(ring_map_kernel(psi)),
                "flatness asserted": str(a["via"] in self.flat).lower()}

    def do_tl(self, a):
        M = self.module(a["module"])
        if a["via"]:
            T = torsionless_via_flat(M, self.env[a["via"]], a["via"] in self.flat)
        else:
            T, _ = torsionless_quotient(M)
        small, _ = minimize(T)
        return {"ring": str(T.ring), "module": format_module(T), "minimized": format_module(small)}

    def do_dual(self, a):
        D = dual(self.module(a["module"]))
        return {"ring": str(D.ring), "module": format_module(D)}

    def do_ext(self, a):
        E = exterior_power(self.module(a["module"]), a["d"])
        return {"ring": str(E.ring), "module": format_module(E)}

    def do_ann(self, a):
        I = annihilator(self.module(a["module"]))
        return {"ring": str(I.ring), "ideal": str(I)}

    def do_piece(self, a):
        P = graded_piece(self.algebra(a["algebra"]), a["n"])
        small, _ = minimize(P)
        return {"module": format_module(P), "minimized": format_module(small)}

    def do_blowup(self, a):
        G = rees_presentation(self.module(a["module"]))
        head = {**_algebra_fields(G), "empty": str(is_proj_empty(G)).lower()}
        return [head] + [_chart_fields(c) for c in proj_charts(G)]

    def do_charts(self, a):
        G = self.algebra(a["algebra"])
        charts = proj_charts(G)
        if not charts:
            return {"charts": "(none)"}
        return [_chart_fields(c) for c in charts]

    def do_closure(self, a):
        return _algebra_fields(self.algebra(a["algebra"]))

    def do_nash(self, a):
        M = self.module(a["module"])
        N = nash_transform(M, a["d"], self.ideal(a["complement"], M.ring))
        return [_algebra_fields(N.algebra)] + [_chart_fields(c) for c in N.charts]

    def do_dense(self, a):
        A = self.env[a["ring"]]
        rep = schematically_dense(A, self.ideal(a["complement"], A))
        out = {"dense": str(rep.dense).lower()}
        if rep.witness is not None:
            out["witness"] = str(rep.witness)
        return out

    def do_assof(self, a):
        M = self.module(a["module"])
        primes = [self.ideal(p, M.ring) for p in a["primes"]]
        rep = assofrees_check(M, primes)
        out = {f"prime {p}": str(ok).lower() for p, ok in rep.per_prime}
        out["predicted dense"] = str(rep.holds).lower()
        if a["complement"] is not None:
            Jc = self.ideal(a["complement"], M.ring)
            direct = preimage_is_dense(rees_presentation(M), Jc)
            out["direct dense"] = str(direct).lower()
            out["agree"] = str(direct == rep.holds).lower()
        return out

    def do_compare(self, a):
        M = self.module(a["module"])
        loc = self.env[a["localize"]] if a.get("localize") else None
        rep = compare_base_change(M, self.env[a["via"]], loc)
        out = {
            "result": rep.summary(),
            "left": str(view_over(rep.left, M.ring)),
            "right": str(view_over(rep.right, M.ring)),
        }
        for k, v in rep.hypotheses.items():
            out[k] = str(v).lower()
        return out

    def do_inject(self, a):
        M = self.module(a["module"])
        ok = check_injectivity_flat(M, self.env[a["via"]], a["via"] in self.flat)
        return {"injective": str(ok).lower()}

    def do_verify(self, a):
        ok, checks = verify_mod.run()
        out = [{"check": c.name, "expected": c.expected, "actual": c.actual,
                "status": "pass" if c.ok else "FAIL"} for c in checks]
        if not ok:
            raise VerifyMismatch(render_text(out))
        return out


def render_text(blocks: list[dict]) -> str:
    lines = []
    for b in blocks:
        lines.append(b.get("command", ""))
        for k, v in b.items():
            if k != "command":
                lines.append(f"  {k}: {v}")
    return "\n".join(lines) + ("\n" if lines else "")


def render_json(blocks: list[dict]) -> str:
    return json.dumps(blocks, indent=2) + "\n"


def run_text(text: str, as_json: bool = False) -> str:
    blocks = Interpreter().run(parse(text))
    return render_json(blocks) if as_json else render_text(blocks)


def _cmd_run(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    interp = Interpreter()
    try:
        blocks = interp.run(parse(text))
    except VerifyMismatch as exc:
        print(str(exc), end="")
        print("error: verification mismatch", file=sys.stderr)
        return 2
    except (DSLError, ScriptError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(render_json(blocks) if args.json else render_text(blocks))
    return 0


def _cmd_verify(args) -> int:
    ok, checks = verify_mod.run()
    blocks = [{"check": c.name, "expected": c.expected, "actual": c.actual,
               "status": "pass" if c.ok else "FAIL"} for c in checks]
    if args.json:
        sys.stdout.write(render_json(blocks))
    else:
        for c in checks:
            print(f"{'pass' if c.ok else 'FAIL'}  {c.name}: {c.actual}")
        print(f"{sum(c.ok for c in checks)}/{len(checks)} checks passed")
    return 0 if ok else 2


def _cmd_repl(args, stdin=None) -> int:
    stdin = stdin or sys.stdin
    interp = Interpreter()
    interactive = stdin.isatty()
    buf = ""
    while True:
        if interactive:
            sys.stdout.write("... " if buf.strip() else "> ")
            sys.stdout.flush()
        line = stdin.readline()
        if not line:
            break
        buf += line
        if ";" not in line:
            continue
        try:
            script = Parser(buf, dict(interp.kinds)).script()
            sys.stdout.write(render_text(interp.run(script)))
        except (DSLError, ScriptError, VerifyMismatch) as exc:
            print(f"error: {exc}")
        buf = ""
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="reeskit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)
    p = sub.add_parser("run", help="execute a script file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="structured output")
    p.set_defaults(fn=_cmd_run)
    p = sub.add_parser("verify", help="replay the built-in checks")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_verify)
    p = sub.add_parser("repl", help="interactive session")
    p.set_defaults(fn=_cmd_repl)
    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
