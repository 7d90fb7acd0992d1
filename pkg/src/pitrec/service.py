"""HTTP facade over the core package.

Run with:  uvicorn pitrec.service:app
"""

from __future__ import annotations

import base64
import binascii
from fractions import Fraction

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__, codec, metrics
from .cli import format_fixed, plain_decimal
from .errors import PitrecError
from .radix import decompose

app = FastAPI(
    title="pitrec",
    version=__version__,
    description="Exact pit-recoding compression limits, verification, and a PITR codec",
)


@app.exception_handler(PitrecError)
async def _domain_error(_request, exc: PitrecError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


# -- schemas ------------------------------------------------------------------

class FractionOut(BaseModel):
    num: int
    den: int
    decimal: str


def _fraction_out(value: Fraction) -> FractionOut:
    return FractionOut(num=value.numerator, den=value.denominator,
                       decimal=format_fixed(value))


class HealthOut(BaseModel):
    status: str
    version: str


class AnalyzeIn(BaseModel):
    alphabet: int
    base: int


class ReportOut(BaseModel):
    p: int
    alphabet: int
    n: int
    d: int
    s: int
    case: str
    l1: int
    l2: int
    kmin: FractionOut


def _report_out(rep: metrics.CompressionReport) -> ReportOut:
    return ReportOut(
        p=int(rep.params.p), alphabet=rep.params.l_A, n=rep.params.n, d=rep.params.d,
        s=rep.S, case=rep.case_tag.value, l1=rep.L1, l2=rep.L2,
        kmin=_fraction_out(rep.k_min),
    )


class SweepIn(BaseModel):
    alphabet: int
    base_min: int
    base_max: int


class SweepOut(BaseModel):
    rows: list[ReportOut]
    argmin: ReportOut


class TableRowOut(BaseModel):
    p: int
    computed: str
    reference: str
    delta: str
    passed: bool


class TableOut(BaseModel):
    tolerance: str
    rows: list[TableRowOut]
    all_passed: bool


class VerifyIn(BaseModel):
    max_base: int = 16
    max_rank: int = 6


class CheckOut(BaseModel):
    name: str
    cases: int
    ok: bool
    detail: str


class VerifyOut(BaseModel):
    checks: list[CheckOut]
    all_passed: bool


class EncodeIn(BaseModel):
    data_b64: str
    base: int
    passes: int = 1
    alphabet: int = Field(default=256, description="input alphabet; 256 reads raw bytes")


class PassOut(BaseModel):
    index: int
    g: int
    symbol_count: int
    pad_pits: int
    output_pits: int
    lengths_block_bytes: int
    record_bytes: int
    ratio: FractionOut | None


class MeasureOut(BaseModel):
    passes: list[PassOut]
    header_bytes: int
    side_channel_bytes: int
    payload_bytes: int
    container_bytes: int
    payload_pits: int
    pit_ratio: FractionOut | None


class EncodeOut(BaseModel):
    container_b64: str
    payload_pit_count: int
    measure: MeasureOut


class DecodeIn(BaseModel):
    container_b64: str


class DecodeOut(BaseModel):
    data_b64: str
    alphabet: int
    symbol_count: int


def _measure_out(report: codec.MeasureReport) -> MeasureOut:
    return MeasureOut(
        passes=[
            PassOut(
                index=row.index, g=row.g, symbol_count=row.symbol_count,
                pad_pits=row.pad_pits, output_pits=row.output_pits,
                lengths_block_bytes=row.lengths_block_bytes,
                record_bytes=row.record_bytes,
                ratio=_fraction_out(row.ratio) if row.ratio is not None else None,
            )
            for row in report.passes
        ],
        header_bytes=report.header_bytes,
        side_channel_bytes=report.side_channel_bytes,
        payload_bytes=report.payload_bytes,
        container_bytes=report.container_bytes,
        payload_pits=report.payload_pits,
        pit_ratio=_fraction_out(report.pit_ratio) if report.pit_ratio is not None else None,
    )


def _b64_bytes(text: str, what: str) -> bytes:
    try:
        return base64.b64decode(text, validate=True)
    except (binascii.Error, ValueError) as exc:
        raise HTTPException(status_code=400, detail=f"invalid base64 in {what}: {exc}")


# -- endpoints ----------------------------------------------------------------

@app.get("/health", response_model=HealthOut)
def health() -> HealthOut:
    """Liveness probe."""
    return HealthOut(status="ok", version=__version__)


@app.post("/analyze", response_model=ReportOut)
def analyze(req: AnalyzeIn) -> ReportOut:
    """Exact compression report for one (alphabet, base) pair."""
    return _report_out(metrics.report(decompose(req.alphabet, req.base)))


@app.post("/sweep", response_model=SweepOut)
def sweep(req: SweepIn) -> SweepOut:
    """Reports for every base in [base_min, base_max], plus the argmin."""
    try:
        reports = metrics.sweep(req.alphabet, req.base_min, req.base_max)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    best = min(reports, key=lambda r: (r.k_min, r.params.p))
    return SweepOut(rows=[_report_out(r) for r in reports], argmin=_report_out(best))


@app.get("/table", response_model=TableOut)
def table() -> TableOut:
    """Computed k_min against the rounded reference values for l_A = 256."""
    rows = metrics.reference_rows()
    out = [
        TableRowOut(p=row.p, computed=format_fixed(row.computed),
                    reference=plain_decimal(row.reference),
                    delta=format_fixed(row.delta), passed=row.passed)
        for row in rows
    ]
    return TableOut(tolerance=plain_decimal(metrics.REFERENCE_TOLERANCE),
                    rows=out, all_passed=all(r.passed for r in rows))


@app.post("/verify", response_model=VerifyOut)
def verify(req: VerifyIn) -> VerifyOut:
    """Run the formula verification suite at the given grid bounds."""
    try:
        checks = metrics.run_verification(req.max_base, req.max_rank)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return VerifyOut(
        checks=[CheckOut(name=c.name, cases=c.cases, ok=c.ok, detail=c.detail) for c in checks],
        all_passed=all(c.ok for c in checks),
    )


@app.post("/encode", response_model=EncodeOut)
def encode(req: EncodeIn) -> EncodeOut:
    """Recode base64 data into a PITR container (returned as base64)."""
    data = _b64_bytes(req.data_b64, "data_b64")
    try:
        file = codec.bytes_to_symbols(data, req.alphabet)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    container = codec.encode(file, req.base, req.passes)
    return EncodeOut(
        container_b64=base64.b64encode(container.to_bytes()).decode("ascii"),
        payload_pit_count=container.payload_pit_count,
        measure=_measure_out(codec.measure(container)),
    )


@app.post("/decode", response_model=DecodeOut)
def decode(req: DecodeIn) -> DecodeOut:
    """Restore the original bytes from a base64 PITR container."""
    data = _b64_bytes(req.container_b64, "container_b64")
    file = codec.decode(codec.PitrContainer.from_bytes(data))
    return DecodeOut(
        data_b64=base64.b64encode(codec.symbols_to_bytes(file)).decode("ascii"),
        alphabet=file.l_A,
        symbol_count=len(file),
    )


def main() -> None:
    """Serve the app locally (development convenience)."""
    import uvicorn

    uvicorn.run("pitrec.service:app", host="127.0.0.1", port=8000)


if __name__ == "__main__":
    main()
