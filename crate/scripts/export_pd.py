#!/usr/bin/env python3
"""Write PD files for named links from the spherogram link table.

usage: export_pd.py OUTDIR NAME[:mirror] [NAME[:mirror] ...]

A `:mirror` suffix writes the mirror image, for figures drawn with the
opposite chirality to the table diagram.

Edge labels are shifted to start at 1. Orientation is left at the default;
orientation vectors are kept in the dataset manifest.
"""
import os
import sys

import spherogram


def export(spec, outdir):
    name, _, flag = spec.partition(":")
    link = spherogram.Link(name)
    if flag == "mirror":
        link = link.mirror()
    pd = link.PD_code()
    k = len(link.link_components)
    lines = [f"name {name}", f"components {k}"]
    lines += ["X " + " ".join(str(e + 1) for e in x) for x in pd]
    path = os.path.join(outdir, f"{name}.pd")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")
    return path


def main():
    if len(sys.argv) < 3:
        sys.exit(__doc__)
    outdir = sys.argv[1]
    os.makedirs(outdir, exist_ok=True)
    for name in sys.argv[2:]:
        print(export(name, outdir))


if __name__ == "__main__":
    main()
