"""Single compiler binary: passes run in command-line order."""

from __future__ import annotations

import argparse
import sys

from ..backends import FORMATS
from ..mapping.hillclimb import DEFAULT_BUDGET
from ..optimize import PipelineOptions
from .common import compile_text, guarded, write


class _Pass(argparse.Action):
    """Append a pass name to the shared, order-preserving pass list."""

    def __init__(self, option_strings, dest, pass_name=None, **kw):
        self.pass_name = pass_name
        kw.setdefault("nargs", 0)
        super().__init__(option_strings, dest, **kw)

    def __call__(self, parser, ns, values, option_string=None):
        name = self.pass_name or f"O{values}"
        ns.passes = [*(ns.passes or []), name]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qasmkit", description="Optimize, map and translate openQASM 2.0 programs.")
    ap.add_argument("input", nargs="?", help="source file (stdin when omitted)")
    for flag, name, text in [
        ("-s", "simplify", "cancel adjacent inverse gates until nothing changes"),
        ("-S", "simplify-once", "a single cancellation sweep"),
        ("-r", "rotation-fold", "merge rotations across Clifford gates"),
        ("-c", "cnot-resynth", "resynthesize CNOT-dihedral blocks"),
        ("-i", "inline", "inline declared gates, keeping the standard library"),
        ("-m", "map", "map onto the device (inlines fully first)"),
    ]:
        ap.add_argument(flag, dest="passes", action=_Pass, pass_name=name, help=text)
    ap.add_argument("-O", dest="passes", action=_Pass, nargs=None, choices=["1", "2"],
                    metavar="{1,2}", help="-O1: -s -r -s; -O2: -O1 -c -s")
    ap.add_argument("-d", "--device", default="square9", help="builtin device name or device file")
    ap.add_argument("-l", "--layout", default="linear", help="linear|eager|bestfit")
    ap.add_argument("-M", "--mapper", default="swap", help="swap|steiner")
    ap.add_argument("--layout-opt", nargs="?", type=int, const=DEFAULT_BUDGET, default=None,
                    metavar="BUDGET", help="hill-climb the initial layout")
    ap.add_argument("-f", "--format", default="qasm", choices=FORMATS)
    ap.add_argument("-o", "--output", help="output file (stdout when omitted)")
    ap.add_argument("--keep-global-phase", action="store_true",
                    help="emit the phase dropped by rotation folding")
    ap.add_argument("--perm-out", metavar="FILE",
                    help="write the final qubit permutation and layout as JSON")
    ap.set_defaults(passes=[])
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    opts = PipelineOptions(
        ignore_global_phase=not args.keep_global_phase, device=args.device,
        layout=args.layout, mapper=args.mapper, layout_opt=args.layout_opt)

    def run():
        text = compile_text(args.input, args.passes, opts, args.format, args.perm_out)
        write(text, args.output)

    return guarded(run, args.input)


if __name__ == "__main__":
    sys.exit(main())
