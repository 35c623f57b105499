"""Root sets: the common output type of the solver and the oracle."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field


def normalized_residual(p, q, x: complex, y: complex) -> float:
    """max over the two polynomials of |poly(x,y)| / sum |c_alpha x^alpha|.

    The denominator weights each coefficient by the magnitude of its
    monomial at the point, so the value is a relative backward error in
    the coefficients.
    """

    def one(poly) -> float:
        num = abs(complex(poly.evaluate((x, y))))
        den = 0.0
        for exp, c in poly.terms.items():
            w = abs(complex(c))
            if exp[0]:
                w *= abs(x) ** exp[0]
            if len(exp) > 1 and exp[1]:
                w *= abs(y) ** exp[1]
            den += w
        return num / den if den > 0.0 else num

    return max(one(p), one(q))


@dataclass(frozen=True)
class RootSet:
    """Computed roots with residuals and solver provenance."""

    roots: tuple
    residuals: tuple
    multiplicities: tuple = ()
    status: str = "ok"
    reduced_size: int | None = None
    retries: int = 0
    log: tuple = field(default_factory=tuple)
    failure: str | None = None

    def __len__(self) -> int:
        return len(self.roots)

    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)


def rootset_to_json(rs: RootSet) -> dict:
    return {
        "roots": [
            {
                "x_re": complex(x).real,
                "x_im": complex(x).imag,
                "y_re": complex(y).real,
                "y_im": complex(y).imag,
                "residual": float(r),
            }
            for (x, y), r in zip(rs.roots, rs.residuals)
        ],
        "reduced_size": rs.reduced_size,
        "retries": rs.retries,
        "status": rs.status,
    }


def rootset_from_json(obj: dict) -> RootSet:
    roots = []
    residuals = []
    for entry in obj.get("roots", []):
        roots.append((complex(entry["x_re"], entry["x_im"]), complex(entry["y_re"], entry["y_im"])))
        residuals.append(float(entry["residual"]))
    return RootSet(
        roots=tuple(roots),
        residuals=tuple(residuals),
        multiplicities=(1,) * len(roots),
        status=obj.get("status", "ok"),
        reduced_size=obj.get("reduced_size"),
        retries=int(obj.get("retries", 0)),
    )


def rootset_to_csv(rs: RootSet) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["x_re", "x_im", "y_re", "y_im", "residual"])
    for (x, y), r in zip(rs.roots, rs.residuals):
        x, y = complex(x), complex(y)
        writer.writerow([x.real, x.imag, y.real, y.imag, float(r)])
    return buf.getvalue()
