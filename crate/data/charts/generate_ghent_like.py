#!/usr/bin/env python3
"""Writes the synthetic Ghent-like chart as a JSON chart document and as an
equivalent set of ESRI shapefile/dBASE pairs.

The layout is a bending main river with a 5 m channel, a shorter but shallow
(2 m) canal between two river junctions, and a harbour spur whose axis stops
short of the river axis. Geometry is designed in local metres and converted
to degrees around lon 3.72, lat 51.05.

Usage: python3 generate_ghent_like.py [output_dir]
"""

import json
import math
import os
import struct
import sys

R = 6371000.0
LON0, LAT0 = 3.72, 51.05
HALF_WIDTH = 60.0
# charted axes carry vertices every few tens of metres
AXIS_SPACING = 50.0


def to_deg(p):
    x, y = p
    lon = LON0 + math.degrees(x / (R * math.cos(math.radians(LAT0))))
    lat = LAT0 + math.degrees(y / R)
    return [lon, lat]


def corridor(a, b, half=HALF_WIDTH, ext_a=None, ext_b=None):
    """Closed rectangle around segment a-b, extended by `half` at both ends
    unless other extensions are given (negative values trim)."""
    ext_a = half if ext_a is None else ext_a
    ext_b = half if ext_b is None else ext_b
    dx, dy = b[0] - a[0], b[1] - a[1]
    n = math.hypot(dx, dy)
    ux, uy = dx / n, dy / n
    nx, ny = -uy, ux
    a2 = (a[0] - ux * ext_a, a[1] - uy * ext_a)
    b2 = (b[0] + ux * ext_b, b[1] + uy * ext_b)
    ring = [
        (a2[0] + nx * half, a2[1] + ny * half),
        (a2[0] - nx * half, a2[1] - ny * half),
        (b2[0] - nx * half, b2[1] - ny * half),
        (b2[0] + nx * half, b2[1] + ny * half),
    ]
    ring.append(ring[0])
    return ring


MAIN = [(-1500, -200), (-800, -200), (-300, 100), (300, 100), (800, -100), (1500, -100)]
CANAL = [(-800, -200), (0, -350), (800, -100)]
SPUR = [(300, 160), (300, 600)]


def features():
    out = []
    # land first so renderers draw it underneath
    land = [(-1700, -800), (1700, -800), (1700, 800), (-1700, 800), (-1700, -800)]
    out.append(("lndare", "polygon", [land], {"OBJNAM": "Oever"}))

    for i, (a, b) in enumerate(zip(MAIN, MAIN[1:])):
        attrs = {"region": "gent-01"}
        if i % 2 == 0:
            attrs["SOUACC"] = 5.0
        else:
            attrs["VERDAT"] = 4.5
        out.append(("depare", "polygon", [corridor(a, b)], attrs))
    # the canal depth areas stop short of the river so the junctions keep the river depth
    canal_legs = list(zip(CANAL, CANAL[1:]))
    for i, (a, b) in enumerate(canal_legs):
        ext_a = -120.0 if i == 0 else 40.0
        ext_b = -120.0 if i == len(canal_legs) - 1 else 40.0
        poly = corridor(a, b, 40.0, ext_a, ext_b)
        out.append(("depare", "polygon", [poly], {"SOUACC": 2.0, "region": "gent-02"}))
    out.append(("depare", "polygon", [corridor(*SPUR, 40.0)], {"SOUACC": 4.0, "region": "gent-03"}))

    # the main river axis is split at its junctions
    out.append(("wtwaxs", "polyline", [densify(MAIN[0:2])], {"OBJNAM": "Leie", "region": "gent-01"}))
    out.append(("wtwaxs", "polyline", [densify(MAIN[1:5])], {"OBJNAM": "Leie", "region": "gent-01"}))
    out.append(("wtwaxs", "polyline", [densify(MAIN[4:6])], {"OBJNAM": "Leie", "region": "gent-01"}))
    out.append(("wtwaxs", "polyline", [densify(CANAL)], {"OBJNAM": "Kanaal", "region": "gent-02"}))
    out.append(("wtwaxs", "polyline", [densify(SPUR)], {"OBJNAM": "Haven", "region": "gent-03"}))

    bridge = [(-10, 40), (10, 40), (10, 160), (-10, 160), (-10, 40)]
    out.append(("bridge", "polygon", [bridge], {"OBJNAM": "Brug 1", "VERCLR": 7.0}))
    return out


def densify(line, spacing=AXIS_SPACING):
    """Subdivides each segment evenly so no piece is longer than `spacing`."""
    out = [line[0]]
    for a, b in zip(line, line[1:]):
        n = max(1, math.ceil(math.hypot(b[0] - a[0], b[1] - a[1]) / spacing))
        out += [(a[0] + (b[0] - a[0]) * k / n, a[1] + (b[1] - a[1]) * k / n) for k in range(1, n + 1)]
    return out


def deg_parts(parts):
    return [[to_deg(p) for p in part] for part in parts]


def write_json(path, feats):
    doc = {"features": []}
    for cls, kind, parts, attrs in feats:
        geom = {"kind": kind}
        geom["rings" if kind == "polygon" else "parts"] = deg_parts(parts)
        doc["features"].append({"class": cls, "geometry": geom, "attributes": attrs})
    with open(path, "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")


# --- shapefile writer (ESRI whitepaper layout) ---------------------------

SHAPE_CODES = {"polyline": 3, "polygon": 5}


def shp_bytes(kind, geoms):
    records = b""
    all_pts = [p for g in geoms for part in g for p in part]
    for i, parts in enumerate(geoms, start=1):
        pts = [p for part in parts for p in part]
        xs, ys = [p[0] for p in pts], [p[1] for p in pts]
        body = struct.pack("<i", SHAPE_CODES[kind])
        body += struct.pack("<4d", min(xs), min(ys), max(xs), max(ys))
        body += struct.pack("<2i", len(parts), len(pts))
        start = 0
        for part in parts:
            body += struct.pack("<i", start)
            start += len(part)
        for p in pts:
            body += struct.pack("<2d", p[0], p[1])
        records += struct.pack(">2i", i, len(body) // 2) + body
    xs, ys = [p[0] for p in all_pts], [p[1] for p in all_pts]
    header = struct.pack(">7i", 9994, 0, 0, 0, 0, 0, (100 + len(records)) // 2)
    header += struct.pack("<2i", 1000, SHAPE_CODES[kind])
    header += struct.pack("<8d", min(xs), min(ys), max(xs), max(ys), 0, 0, 0, 0)
    return header + records


def dbf_bytes(fields, rows):
    """fields: list of (name, type, length, decimals)."""
    header_len = 32 + 32 * len(fields) + 1
    record_len = 1 + sum(f[2] for f in fields)
    out = struct.pack("<B3BIHH20x", 3, 95, 1, 1, len(rows), header_len, record_len)
    for name, typ, length, dec in fields:
        out += name.encode("ascii").ljust(11, b"\0") + typ.encode("ascii")
        out += b"\0" * 4 + struct.pack("<BB", length, dec) + b"\0" * 14
    out += b"\x0d"
    for row in rows:
        rec = b" "
        for name, typ, length, dec in fields:
            v = row.get(name)
            if v is None:
                txt = ""
            elif typ == "N":
                txt = f"{v:.{dec}f}".rjust(length)
            else:
                txt = str(v).ljust(length)
            rec += txt.encode("latin-1")[:length].ljust(length)
        out += rec
    out += b"\x1a"
    return out


DBF_FIELDS = {
    "depare": [("SOUACC", "N", 10, 2), ("VERDAT", "N", 10, 2), ("region", "C", 16, 0)],
    "wtwaxs": [("OBJNAM", "C", 24, 0), ("region", "C", 16, 0)],
    "bridge": [("OBJNAM", "C", 24, 0), ("VERCLR", "N", 10, 2)],
    "lndare": [("OBJNAM", "C", 24, 0)],
}


def write_shapefiles(directory, feats):
    os.makedirs(directory, exist_ok=True)
    for cls, fields in DBF_FIELDS.items():
        chosen = [f for f in feats if f[0] == cls]
        kind = chosen[0][1]
        geoms = [deg_parts(f[2]) for f in chosen]
        with open(os.path.join(directory, f"{cls}.shp"), "wb") as fh:
            fh.write(shp_bytes(kind, geoms))
        with open(os.path.join(directory, f"{cls}.dbf"), "wb") as fh:
            fh.write(dbf_bytes(fields, [f[3] for f in chosen]))


def main():
    out_dir = sys.argv[1] if len(sys.argv) > 1 else os.path.dirname(os.path.abspath(__file__))
    feats = features()
    write_json(os.path.join(out_dir, "ghent_like.json"), feats)
    write_shapefiles(os.path.join(out_dir, "ghent_like_shp"), feats)
    for name, p in [("start", (-1450, -200)), ("goal", (1450, -100))]:
        print(name, to_deg(p))


if __name__ == "__main__":
    main()
