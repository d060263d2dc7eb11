"""Frozen byte-format goldens for the CSV and SVG emitters.

These pin the exact output formats: a change that shifts a single byte is a
format change and must be deliberate (update the goldens alongside it).
"""

import hashlib

from quopatlas.atlas import RenderStyle, emit_csv, render_svg, table_from_region
from quopatlas.model import CapabilityRegion

REGIONS = [
    CapabilityRegion(0.36787944117144233, {1: 99, 2: 49, 3: 33}, "eps=1e-2", "analytic"),
    CapabilityRegion(0.36787944117144233, {1: 999, 2: 499, 3: 333}, "eps=1e-3", "analytic"),
]

GOLDEN_CSV = b"""# scenario: {"demo":true}
region_label,width,max_depth,quops,source,p_hat,stderr,d_code
eps=1e-2,1,99,99,analytic,,,
eps=1e-2,2,49,98,analytic,,,
eps=1e-2,3,33,99,analytic,,,
eps=1e-3,1,999,999,analytic,,,
eps=1e-3,2,499,998,analytic,,,
eps=1e-3,3,333,999,analytic,,,
"""

# sha256 of the fixed SVG document below; the determinism tests cover
# run-to-run stability, this pins the format itself.
GOLDEN_SVG_SHA256 = "bd384ffc0e95cfea2a6c1ffea57f9c7c865b876841ceb9d169bf91171ccb2583"


def test_csv_bytes_golden():
    tables = [table_from_region(r) for r in REGIONS]
    assert emit_csv(tables, scenario_echo={"demo": True}) == GOLDEN_CSV


def test_svg_golden_hash():
    style = RenderStyle(
        width_range=(1, 8), depth_range=(1, 10**4), title="golden", quop_guides=(100,)
    )
    svg = render_svg(REGIONS, style, scenario_echo={"demo": True})
    digest = hashlib.sha256(svg.encode("utf-8")).hexdigest()
    assert digest == GOLDEN_SVG_SHA256, f"SVG format changed: sha256 now {digest}"
