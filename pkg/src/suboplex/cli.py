"""Command-line front end.

Each verb builds the same request model the HTTP service accepts, runs it
in-process (or posts it to ``--server``) and prints the result.  Exit codes:
0 success, 1 negative verdict, 2 usage or input error, 3 cross-check
discrepancy.  Errors are printed to stderr as JSON.

Partial functions are dot-strings such as ``01.1``.  Sign vectors for geometry
verbs use ``+``, ``-``, ``0``; bit 0 corresponds to ``+`` and bit 1 to ``-``.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Callable, Optional

import click
from pydantic import BaseModel, ValidationError

from . import __version__
from .api import (
    EXIT_DISCREPANCY,
    EXIT_USAGE,
    HANDLERS,
    ClassQuery,
    ErrorBody,
    ErrorResponse,
    FarkasQuery,
    ResolveQuery,
    Response,
    SeparateQuery,
    VerifyQuery,
    error_response,
)
from .errors import SuboplexError


class _Exit(Exception):
    def __init__(self, code: int) -> None:
        self.code = code


def _fail(code: str, message: str, exit_code: int = EXIT_USAGE) -> None:
    body = ErrorResponse(error=ErrorBody(code=code, message=message), exit_code=exit_code)
    click.echo(json.dumps(body.model_dump(), separators=(",", ":")), err=True)
    raise _Exit(exit_code)


def read_json_arg(text: str, what: str) -> Any:
    """Inline JSON, or a path to a JSON file."""
    s = text.strip()
    if s[:1] in "{[":
        try:
            return json.loads(s)
        except json.JSONDecodeError as exc:
            _fail("input", f"{what}: invalid JSON ({exc.msg})")
    p = Path(text)
    if not p.is_file():
        _fail("input", f"{what}: {text!r} is neither JSON nor a readable file")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        _fail("input", f"{what}: {p} is not valid JSON ({exc.msg})")


# ----------------------------------------------------------------------------
# output


def _flatten(obj: Any, prefix: str = "") -> list[tuple[str, str]]:
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            out += _flatten(v, f"{prefix}.{k}" if prefix else str(k))
        return out
    if isinstance(obj, list) and obj and all(isinstance(x, dict) for x in obj):
        out = []
        for j, v in enumerate(obj):
            out += _flatten(v, f"{prefix}[{j}]")
        return out
    if isinstance(obj, (list, tuple)):
        return [(prefix, " ".join(str(x) for x in obj))]
    if obj is None:
        return [(prefix, "")]
    if isinstance(obj, bool):
        return [(prefix, "true" if obj else "false")]
    return [(prefix, str(obj))]


def _betti_rows(verb: str, result: dict[str, Any]) -> list[list[Any]] | None:
    if verb == "betti":
        tables = result.get("tables") or {result["field"]: result["table"]}
    elif verb == "analyze":
        tables = result["betti"]
    else:
        return None
    return [[f, e["i"], e["pf"], e["rank"]] for f, t in tables.items() for e in t]


def render(verb: str, result: dict[str, Any], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result, separators=(",", ":"))
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        rows = _betti_rows(verb, result)
        if rows is not None:
            w.writerow(["field", "i", "pf", "rank"])
            w.writerows(rows)
        elif verb == "verify-paper":
            w.writerow(["criterion", "title", "passed", "seconds"])
            for c in result["criteria"]:
                w.writerow([c["criterion"], c["title"], str(c["passed"]).lower(), c["seconds"]])
        else:
            w.writerow(["key", "value"])
            w.writerows(_flatten(result))
        return buf.getvalue().rstrip("\n")
    if verb == "verify-paper":
        return "\n".join(result["lines"])
    return "\n".join(f"{k}: {v}" for k, v in _flatten(result))


# ----------------------------------------------------------------------------
# execution


def _via_server(url: str, verb: str, q: BaseModel) -> Response:
    import httpx

    body = q.model_dump(by_alias=True, exclude_none=True)
    try:
        r = httpx.post(f"{url.rstrip('/')}/{verb}", json=body, timeout=None)
    except httpx.HTTPError as exc:
        _fail("connection", f"cannot reach {url}: {exc}")
    data = r.json()
    if r.status_code == 200:
        return Response.model_validate(data)
    if "error" in data:
        err = ErrorResponse.model_validate(data)
        _fail(err.error.code, err.error.message, err.exit_code)
    _fail("input", json.dumps(data.get("detail", data), separators=(",", ":")))
    raise AssertionError  # unreachable


def _run(ctx: click.Context, verb: str, build: Callable[[], BaseModel]) -> None:
    fmt, server = ctx.obj["format"], ctx.obj["server"]
    try:
        q = build()
    except ValidationError as exc:
        _fail("input", "; ".join(f"{'.'.join(map(str, e['loc']))}: {e['msg']}" for e in exc.errors()))
    if server:
        resp = _via_server(server, verb, q)
    else:
        try:
            resp = HANDLERS[verb][1](q)
        except SuboplexError as exc:
            err = error_response(exc)
            click.echo(json.dumps(err.model_dump(), separators=(",", ":")), err=True)
            raise _Exit(err.exit_code)
    click.echo(render(verb, resp.result, fmt))
    raise _Exit(resp.exit_code)


def _class_options(f: Callable) -> Callable:
    f = click.option("--limit-faces", type=click.IntRange(min=1), default=None,
                     help="Face budget per homology computation (default 10^6, or SUBOPLEX_LIMIT_FACES).")(f)
    f = click.option("--threads", type=click.IntRange(1, 64), default=1, show_default=True)(f)
    f = click.option("--field", "field_name", type=click.Choice(["rational", "gf2", "both"]), default="rational",
                     show_default=True, help="Coefficient field; 'both' cross-checks the two.")(f)
    f = click.option("--class", "class_arg", required=True, metavar="JSON|FILE",
                     help='Class spec, e.g. \'{"kind":"delta","n":3}\'.')(f)
    return f


def _class_query(model: type[ClassQuery], class_arg: str, field_name: str, threads: int,
                 limit_faces: Optional[int], **extra: Any) -> Callable[[], BaseModel]:
    def build() -> BaseModel:
        spec = read_json_arg(class_arg, "--class")
        return model.model_validate(
            {"class": spec, "field": field_name, "threads": threads, "limit_faces": limit_faces, **extra}
        )
    return build


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="suboplex")
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "text"]), default="json", show_default=True)
@click.option("--server", default=None, metavar="URL", help="Send the request to a running service instead.")
@click.pass_context
def cli(ctx: click.Context, fmt: str, server: Optional[str]) -> None:
    """Homological invariants of finite function classes.

    Partial functions are dot-strings ("01.1"); sign vectors use + - 0 with
    bit 0 read as + and bit 1 as -.
    """
    ctx.obj = {"format": fmt, "server": server}


def _class_verb(name: str, doc: str) -> None:
    @cli.command(name, help=doc)
    @_class_options
    @click.pass_context
    def cmd(ctx: click.Context, class_arg: str, field_name: str, threads: int, limit_faces: Optional[int]) -> None:
        _run(ctx, name, _class_query(ClassQuery, class_arg, field_name, threads, limit_faces))


_class_verb("analyze", "Betti table, dimensions, extentures and Cohen-Macaulay status of a class.")
_class_verb("betti", "Multigraded Betti numbers of the canonical ideal.")
_class_verb("dims", "Homological, Stanley-Reisner and VC dimensions.")
_class_verb("ideal", "Stanley-Reisner and canonical generators, and the extentures.")
_class_verb("cm", "Cohen-Macaulay test; exit 1 if the class is not Cohen-Macaulay.")


@cli.command("separate")
@_class_options
@click.option("--target", required=True, help="Dot-string, or one of parity, majority, ind1, zeros, ones.")
@click.pass_context
def separate_cmd(ctx: click.Context, class_arg: str, field_name: str, threads: int,
                 limit_faces: Optional[int], target: str) -> None:
    """Betti certificate that TARGET lies outside the class; exit 1 if it does."""
    _run(ctx, "separate", _class_query(SeparateQuery, class_arg, field_name, threads, limit_faces, target=target))


@cli.command("farkas")
@click.option("--subspace", metavar="JSON|FILE", help='Linear subspace, {"basis": [[...], ...]}.')
@click.option("--arrangement", metavar="JSON|FILE", help='Affine arrangement, {"hyperplanes": [{"normal": [...], "offset": c}]}.')
@click.option("--affine", metavar="JSON|FILE", help='Affine subspace, {"base": [...], "directions": [[...]]}.')
@click.option("--no-cross-check", is_flag=True, help="Skip the LP cross-check.")
@click.pass_context
def farkas_cmd(ctx: click.Context, subspace: Optional[str], arrangement: Optional[str],
               affine: Optional[str], no_cross_check: bool) -> None:
    """Positive point of a subspace, or a homological hole certificate (exit 1)."""
    def build() -> BaseModel:
        return FarkasQuery(
            subspace=read_json_arg(subspace, "--subspace") if subspace else None,
            arrangement=read_json_arg(arrangement, "--arrangement") if arrangement else None,
            affine=read_json_arg(affine, "--affine") if affine else None,
            cross_check=not no_cross_check,
        )
    if not (subspace or arrangement or affine):
        _fail("usage", "farkas needs --subspace, or --arrangement with --affine")
    _run(ctx, "farkas", build)


@cli.command("resolve")
@click.option("--resolution", "res", required=True, metavar="JSON|FILE",
              help='Named resolution, e.g. {"kind":"wt","n":4,"k":2}; join/product/restrict compose.')
@click.option("--no-check", is_flag=True, help="Only build the complex.")
@click.option("--limit-faces", type=click.IntRange(min=1), default=None)
@click.pass_context
def resolve_cmd(ctx: click.Context, res: str, no_check: bool, limit_faces: Optional[int]) -> None:
    """Build a labeled cell complex and check that it resolves its ideal (exit 1 if not)."""
    _run(ctx, "resolve", lambda: ResolveQuery(resolution=read_json_arg(res, "--resolution"),
                                              check=not no_check, limit_faces=limit_faces))


@cli.command("verify-paper")
@click.option("--filter", "filter_text", default=None, help="Criterion number or title substring.")
@click.pass_context
def verify_paper_cmd(ctx: click.Context, filter_text: Optional[str]) -> None:
    """Run the acceptance criteria; exit 3 if any fails."""
    _run(ctx, "verify-paper", lambda: VerifyQuery(filter=filter_text))


@cli.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve_cmd(host: str, port: int) -> None:  # pragma: no cover
    """Run the HTTP service."""
    from .service import run

    run(host, port)


def run(argv: Optional[list[str]] = None) -> int:
    """Run the CLI and return the exit code instead of exiting."""
    try:
        cli.main(args=argv, prog_name="suboplex", standalone_mode=False)
    except _Exit as e:
        return e.code
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.exceptions.Abort:
        return EXIT_USAGE
    except click.UsageError as e:
        _emit_error("usage", e.format_message())
        return EXIT_USAGE
    except Exception as e:  # any other failure is a bug, reported like a discrepancy
        _emit_error("internal", f"{type(e).__name__}: {e}")
        return EXIT_DISCREPANCY
    return 0


def _emit_error(code: str, message: str) -> None:
    body = ErrorResponse(error=ErrorBody(code=code, message=message), exit_code=EXIT_USAGE)
    if code == "internal":
        body.exit_code = EXIT_DISCREPANCY
    click.echo(json.dumps(body.model_dump(), separators=(",", ":")), err=True)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
