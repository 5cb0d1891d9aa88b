"""
Command-line interface - one subcommand per analysis

Every subcommand renders a rich report, or a single JSON document with
``--json``. Exit codes: 0 report produced, 2 parse error, 3 rewriting
system did not complete, 4 resource cap, 5 invalid certificate.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from rich.console import Console
from rich.logging import RichHandler

from .abelian import CyclicEpi, epimorphisms_to_cyclic, h1
from .batch import BatchRunner, rows_to_frame
from .config import RunConfig
from .enumeration import ball_stats, build_ball, build_mul_table, low_index_subgroups
from .errors import (
    EXIT_INVALID_CERTIFICATE, EXIT_NON_CONFLUENT, EXIT_OK, EXIT_RESOURCE_CAP,
    ConfigError, OrderabilityError, exit_code_for,
)
from .obstruction import (
    check_endomorphism, check_quotients_cyclic, circle_obstruction, kernel_orbits, verify_identity_corpus,
)
from .orderability import (
    Certificate, CertificateCheck, InconclusiveReason, certificate_from_cases, check_certificate,
    test_left_orderability,
)
from .report_generator import ProgressDisplay, ReportFormatter, ball_frame, save_growth_plot
from .rewriting import RewritingSystem, knuth_bendix
from .subgroups import derived_subgroup_table, subgroup_presentation, tietze_simplify
from .words import GeneratorMap, Presentation, parse_presentation, parse_word
from . import weeks

logger = logging.getLogger(__name__)


def _parse_radii(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid radius list: {text!r}")


def _parse_map(text: str) -> Dict[str, str]:
    """``a=b,b=a`` -> {"a": "b", "b": "a"}"""
    images = {}
    for part in text.split(","):
        name, sep, image = part.partition("=")
        if not sep or not name.strip():
            raise argparse.ArgumentTypeError(f"invalid generator map: {text!r}")
        images[name.strip()] = image.strip()
    return images


class OrderabilityAgent:
    """Runs analyses on presentation files and renders their reports"""

    def __init__(self, config: Optional[RunConfig] = None, json_output: bool = False):
        self.config = config or RunConfig()
        self.json_output = json_output
        self.console = Console(quiet=json_output)
        self.progress = ProgressDisplay(quiet=json_output)
        self.report_formatter = ReportFormatter(self.console)

    # -- helpers ----------------------------------------------------------

    def emit(self, payload: Dict):
        if self.json_output:
            print(self.report_formatter.to_json(payload))

    def load(self, path: str) -> Presentation:
        with open(path) as f:
            text = f.read()
        presentation = parse_presentation(text)
        logger.info("%s: %d generators, %d relators", path, presentation.rank, len(presentation.relators))
        return presentation

    def complete(self, presentation: Presentation) -> RewritingSystem:
        with self.progress.spinner("Completing rewriting system..."):
            system = knuth_bendix(presentation, self.config.max_rules, self.config.max_lhs_length,
                                  self.config.deadline())
        return system

    # -- subcommands ------------------------------------------------------

    def check(self, path: str, seed: Optional[Sequence[str]] = None, cert_out: Optional[str] = None) -> int:
        presentation = self.load(path)
        system = self.complete(presentation)
        system.require_confluent()
        seed_words = None if seed is None else tuple(parse_word(w, presentation) for w in seed)
        with self.progress.spinner("Searching for a positive cone..."):
            verdict = test_left_orderability(presentation, self.config, system, seed_words)

        certificate_path = ""
        check: Optional[CertificateCheck] = None
        if verdict.certificate is not None:
            certificate_path = cert_out or str(Path(path).with_suffix(".cert.json"))
            verdict.certificate.save(certificate_path)
            check = check_certificate(verdict.certificate, presentation, system)
            if not check.valid:
                self.progress.print_error(f"emitted certificate failed re-check: {check.failure}")

        self.emit({
            "file": path,
            **verdict.to_dict(),
            "certificate_path": certificate_path or None,
            "certificate_valid": check.valid if check else None,
        })
        if not self.json_output:
            self.report_formatter.print_verdict(verdict, path, certificate_path)
        if check is not None and not check.valid:
            return EXIT_INVALID_CERTIFICATE
        if verdict.reason is InconclusiveReason.BUDGET_EXCEEDED:
            return EXIT_RESOURCE_CAP
        return EXIT_OK

    def kb(self, path: str, save: Optional[str] = None, show_rules: int = 0) -> int:
        presentation = self.load(path)
        system = self.complete(presentation)
        if save:
            with open(save, "w") as f:
                f.write(system.to_text())
        self.emit({
            "file": path,
            "status": system.status.value,
            "stats": system.stats.to_dict(),
            "rules": [[lhs, rhs] for lhs, rhs in system.rules[:show_rules]] if show_rules else None,
            "saved_to": save,
        })
        if not self.json_output:
            self.report_formatter.print_system(system, path, show_rules)
            if save:
                self.progress.print_success(f"Rewriting system saved to {save}")
        return EXIT_OK if system.confluent else EXIT_NON_CONFLUENT

    def ball(self, path: str, radius: int, table: bool = False,
             csv: Optional[str] = None, plot: Optional[str] = None) -> int:
        presentation = self.load(path)
        system = self.complete(presentation)
        system.require_confluent()
        deadline = self.config.deadline()
        with self.progress.spinner(f"Enumerating ball of radius {radius}..."):
            ball = build_ball(system, radius, self.config.max_ball_size, deadline)
            if table:
                ball = build_mul_table(ball, self.config.table_cap, deadline)
        stats = ball_stats(ball)
        if csv:
            ball_frame(stats).to_csv(csv, index=False)
        if plot:
            save_growth_plot(stats, plot, Path(path).stem)
        self.emit({"file": path, **stats.to_dict(), "table_mode": ball.table_mode})
        if not self.json_output:
            self.report_formatter.print_ball(stats, ball, path)
            for written in filter(None, (csv, plot)):
                self.progress.print_success(f"Saved {written}")
        return EXIT_OK

    def homology(self, path: str) -> int:
        presentation = self.load(path)
        invariants = h1(presentation)
        self.emit({"file": path, "h1": invariants.to_dict(), "rendered": invariants.render()})
        if not self.json_output:
            self.report_formatter.print_homology(invariants, path)
        return EXIT_OK

    def kernels(self, path: str, n: Optional[int], raw: bool = False, commutator: bool = False,
                out_dir: Optional[str] = None, maps: Sequence[Dict[str, str]] = ()) -> int:
        presentation = self.load(path)
        if commutator:
            epis: List[CyclicEpi] = []
            tables = [derived_subgroup_table(presentation, self.config.max_cosets)]
        else:
            if n is None:
                raise ConfigError("kernels needs --n or --commutator")
            epis = epimorphisms_to_cyclic(presentation, n)
            tables = [epi.kernel_table() for epi in epis]

        subgroups = []
        with self.progress.spinner("Rewriting subgroup presentations..."):
            for table in tables:
                sub = subgroup_presentation(presentation, table)
                subgroups.append(sub if raw else tietze_simplify(sub, self.config.tietze_budget))

        written = []
        if out_dir:
            Path(out_dir).mkdir(parents=True, exist_ok=True)
            stem = Path(path).stem
            for i, sub in enumerate(subgroups, 1):
                label = "commutator" if commutator else f"n{n}_k{i}"
                target = Path(out_dir) / f"{stem}_{label}.grp"
                target.write_text(sub.presentation.render())
                written.append(str(target))

        orbits = None
        if maps and not commutator:
            generator_maps = [GeneratorMap(presentation.alphabet,
                                           tuple(parse_word(m.get(g, g), presentation) for g in presentation.alphabet))
                              for m in maps]
            system = self.complete(presentation)
            for mapping in generator_maps:
                if not check_endomorphism(presentation, mapping, system):
                    raise ConfigError(f"map {mapping.as_dict()} does not preserve the relators")
            orbits = kernel_orbits(presentation, n, generator_maps)

        self.emit({
            "file": path,
            "modulus": n,
            "commutator": commutator,
            "kernels": [
                {"epimorphism": epi.to_dict() if epi else None, **sub.to_dict()}
                for epi, sub in zip(epis or [None] * len(subgroups), subgroups)
            ],
            "orbits": [[epi.to_dict() for epi in orbit] for orbit in orbits] if orbits is not None else None,
            "written": written,
        })
        if not self.json_output:
            self.report_formatter.print_kernels(epis, subgroups, path)
            if commutator:
                self.console.print(subgroups[0].presentation.render())
            if orbits is not None:
                self.console.print(f"  {len(orbits)} orbit(s) under the given maps")
                for orbit in orbits:
                    self.console.print("   " + ", ".join(epi.render() for epi in orbit))
            for target in written:
                self.progress.print_success(f"Saved {target}")
        return EXIT_OK

    def low_index(self, path: str, n: int, all_subgroups: bool = False) -> int:
        presentation = self.load(path)
        with self.progress.spinner(f"Enumerating subgroups of index <= {n}..."):
            tables = low_index_subgroups(presentation, n, self.config.max_low_index_nodes,
                                         self.config.deadline(), up_to_conjugacy=not all_subgroups)
        self.emit({"file": path, "max_index": n, "subgroups": [t.to_dict() for t in tables]})
        if not self.json_output:
            self.report_formatter.print_low_index(tables, path)
        return EXIT_OK

    def obstruction(self, path: str, save: Optional[str] = None) -> int:
        presentation = self.load(path)
        with self.progress.spinner("Running circle-action obstruction..."):
            report = circle_obstruction(presentation, self.config,
                                        on_step=lambda message: logger.info("obstruction: %s", message))
        self.emit({"file": path, **report.to_dict()})
        if not self.json_output:
            self.report_formatter.print_obstruction(report, path)
        if save:
            fmt = "md" if save.endswith(".md") else "json"
            self.report_formatter.save_report(report, save, fmt, path)
        return EXIT_OK

    def verify_cert(self, path: str, cert_path: str) -> int:
        presentation = self.load(path)
        with open(cert_path) as f:
            certificate = Certificate.from_json(f.read())
        with self.progress.spinner("Checking certificate..."):
            check = check_certificate(certificate, presentation, config=self.config)
        self.emit({"file": path, "certificate": cert_path, **check.to_dict()})
        if not self.json_output:
            self.report_formatter.print_certificate_check(check, cert_path)
        return EXIT_OK if check.valid else EXIT_INVALID_CERTIFICATE

    def identities(self, path: Optional[str] = None) -> int:
        presentation = self.load(path) if path else weeks.WEEKS
        if presentation.digest() != weeks.WEEKS.digest():
            raise ConfigError("the identity corpus is stated for the Weeks presentation")
        system = self.complete(presentation)
        word, factors = weeks.CONJUGATE_FACTORIZATION
        results = verify_identity_corpus(presentation, weeks.identity_corpus(), system, {word: factors})

        checks: Dict[str, CertificateCheck] = {}
        for label, (seed, cases, subgroup) in weeks.CASE_ANALYSES.items():
            certificate = certificate_from_cases(presentation, system, seed, cases, subgroup)
            checks[label] = check_certificate(certificate, presentation, system)

        ok = all(r.holds for r in results) and all(c.valid for c in checks.values())
        self.emit({
            "file": path or "weeks",
            "identities": [r.to_dict() for r in results],
            "case_analyses": {label: check.to_dict() for label, check in checks.items()},
            "all_hold": ok,
        })
        if not self.json_output:
            self.report_formatter.print_identities(results, checks, path or "Weeks")
        return EXIT_OK if ok else EXIT_INVALID_CERTIFICATE

    def quotients(self, path: Optional[str], words: Sequence[str], n: int) -> int:
        presentation = self.load(path) if path else weeks.WEEKS
        if not words:
            words = weeks.QUOTIENT_WORDS
        parsed = [parse_word(w, presentation) for w in words]
        with self.progress.spinner("Enumerating quotients..."):
            results = check_quotients_cyclic(presentation, parsed, n, self.config.max_cosets)
        self.emit({
            "file": path or "weeks",
            "modulus": n,
            "quotients": [r.to_dict() for r in results],
            "all_cyclic": all(r.ok for r in results),
        })
        if not self.json_output:
            self.report_formatter.print_quotients(results, path or "Weeks")
        return EXIT_OK

    def batch(self, directory: str, csv: Optional[str] = None, use_cache: bool = True,
              cert_dir: Optional[str] = None) -> int:
        runner = BatchRunner(directory, self.config, cert_dir=cert_dir, use_cache=use_cache)
        with self.progress.spinner(f"Evaluating {len(runner.files())} presentations..."):
            rows = runner.run()
        if csv:
            rows_to_frame(rows).to_csv(csv, index=False)
        payload = [row.to_dict() for row in rows]
        if self.json_output:
            print(self.report_formatter.to_json(payload))
        else:
            self.report_formatter.print_batch(payload, directory)
            if csv:
                self.progress.print_success(f"Batch table saved to {csv}")
        return EXIT_OK


def _config_from_args(args) -> RunConfig:
    return RunConfig(
        radii=args.radii,
        depth_cap=args.depth_cap,
        screen=args.screen,
        seeded=not args.no_seed,
        max_rules=args.max_rules,
        max_lhs_length=args.max_lhs,
        max_ball_size=args.max_ball,
        table_cap=args.table_cap,
        max_search_nodes=args.max_nodes,
        max_cosets=args.max_cosets,
        timeout=args.timeout if args.timeout > 0 else None,
        deterministic=args.deterministic,
        jobs=args.jobs,
    )


def _setup_logging(verbosity: int):
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Output a single JSON document")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO logs, -vv for DEBUG")
    defaults = RunConfig()
    common.add_argument("--radius", "--radii", dest="radii", type=_parse_radii,
                        default=defaults.radii, help="Radius schedule, e.g. 3,4,5,6 (default: 3,4,5,6)")
    common.add_argument("--depth-cap", type=int, default=defaults.depth_cap,
                        help=f"Case-analysis depth cap (default: {defaults.depth_cap})")
    common.add_argument("--screen", action="store_true",
                        help=f"Screening mode: depth cap {defaults.screen_depth_cap}")
    common.add_argument("--no-seed", action="store_true", help="Do not assume a generator is positive")
    common.add_argument("--max-rules", type=int, default=defaults.max_rules)
    common.add_argument("--max-lhs", type=int, default=defaults.max_lhs_length)
    common.add_argument("--max-ball", type=int, default=defaults.max_ball_size)
    common.add_argument("--table-cap", type=int, default=defaults.table_cap)
    common.add_argument("--max-nodes", type=int, default=defaults.max_search_nodes)
    common.add_argument("--max-cosets", type=int, default=defaults.max_cosets)
    common.add_argument("--timeout", type=float, default=defaults.timeout,
                        help="Seconds per presentation, 0 for none (default: 300)")
    common.add_argument("--deterministic", action="store_true", help="Sequential, reproducible evaluation")
    common.add_argument("--jobs", "-j", type=int, default=1, help="Worker processes for batch")

    parser = argparse.ArgumentParser(
        prog="orderability",
        description="Left-orderability and circle-action obstructions for finitely presented groups",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py check presentations/weeks.grp            # search and write weeks.cert.json
  python main.py verify-cert presentations/weeks.grp presentations/weeks.cert.json
  python main.py homology presentations/weeks.grp
  python main.py kernels presentations/weeks.grp --n 5 --out-dir kernels/
  python main.py circle-obstruction presentations/z_mod3.grp
  python main.py batch presentations/ --jobs 4
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="Search for a left-order obstruction")
    p.add_argument("file")
    p.add_argument("--seed", nargs="*", help="Elements assumed positive (default: first nontrivial generator)")
    p.add_argument("--cert-out", help="Certificate path (default: <name>.cert.json)")

    p = sub.add_parser("kb", parents=[common], help="Complete the rewriting system")
    p.add_argument("file")
    p.add_argument("--save", help="Write the rewriting system to this file")
    p.add_argument("--rules", type=int, default=0, help="Show the first N rules")

    p = sub.add_parser("ball", parents=[common], help="Enumerate a ball of the Cayley graph")
    p.add_argument("file")
    p.add_argument("ball_radius", type=int, metavar="RADIUS")
    p.add_argument("--table", action="store_true", help="Also build the product table")
    p.add_argument("--csv", help="Write radius,size CSV")
    p.add_argument("--plot", help="Write the growth plot (PNG)")

    p = sub.add_parser("homology", parents=[common], help="First homology H1(G; Z)")
    p.add_argument("file")

    p = sub.add_parser("kernels", parents=[common], help="Kernels of epimorphisms onto Z/n")
    p.add_argument("file")
    p.add_argument("--n", type=int)
    p.add_argument("--raw", action="store_true", help="Skip Tietze simplification")
    p.add_argument("--commutator", action="store_true", help="Present the commutator subgroup instead")
    p.add_argument("--out-dir", help="Write each kernel presentation into this directory")
    p.add_argument("--map", dest="maps", type=_parse_map, action="append", default=[],
                   help="Endomorphism such as a=b,b=a; kernels are grouped into orbits")

    p = sub.add_parser("low-index", parents=[common], help="Subgroups of index <= n")
    p.add_argument("file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--all", dest="all_subgroups", action="store_true", help="Do not reduce up to conjugacy")

    p = sub.add_parser("circle-obstruction", parents=[common], help="Rule out faithful circle actions")
    p.add_argument("file")
    p.add_argument("--save", help="Also write the report (.json or .md)")

    p = sub.add_parser("verify-cert", parents=[common], help="Check a non-orderability certificate")
    p.add_argument("file")
    p.add_argument("certificate")

    p = sub.add_parser("identities", parents=[common], help="Check the Weeks identity corpus")
    p.add_argument("file", nargs="?")

    p = sub.add_parser("quotients", parents=[common], help="Check G/<<w>> is cyclic of order n")
    p.add_argument("file", nargs="?")
    p.add_argument("--words", nargs="*", default=[])
    p.add_argument("--n", type=int, default=5)

    p = sub.add_parser("batch", parents=[common], help="Census table for a directory of presentations")
    p.add_argument("directory")
    p.add_argument("--csv", help="Also write the table as CSV")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--cert-dir", help="Certificate directory (default: beside each file)")
    return parser


def dispatch(agent: OrderabilityAgent, args) -> int:
    command = args.command
    if command == "check":
        return agent.check(args.file, args.seed, args.cert_out)
    if command == "kb":
        return agent.kb(args.file, args.save, args.rules)
    if command == "ball":
        return agent.ball(args.file, args.ball_radius, args.table, args.csv, args.plot)
    if command == "homology":
        return agent.homology(args.file)
    if command == "kernels":
        return agent.kernels(args.file, args.n, args.raw, args.commutator, args.out_dir, args.maps)
    if command == "low-index":
        return agent.low_index(args.file, args.n, args.all_subgroups)
    if command == "circle-obstruction":
        return agent.obstruction(args.file, args.save)
    if command == "verify-cert":
        return agent.verify_cert(args.file, args.certificate)
    if command == "identities":
        return agent.identities(args.file)
    if command == "quotients":
        return agent.quotients(args.file, args.words, args.n)
    if command == "batch":
        return agent.batch(args.directory, args.csv, not args.no_cache, args.cert_dir)
    raise ValueError(f"unknown command: {command}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    _setup_logging(args.verbose)

    progress = ProgressDisplay(quiet=args.json)
    try:
        agent = OrderabilityAgent(_config_from_args(args), json_output=args.json)
        return dispatch(agent, args)
    except OrderabilityError as e:
        code = exit_code_for(e)
        if args.json:
            print(ReportFormatter().to_json({"error": e.kind, "message": str(e)}))
        else:
            progress.print_error(str(e))
        return code
    except OSError as e:
        if args.json:
            print(ReportFormatter().to_json({"error": "io_error", "message": str(e)}))
        else:
            progress.print_error(str(e))
        return 1
    except KeyboardInterrupt:
        progress.print_warning("Analysis interrupted by user")
        return 130


if __name__ == "__main__":
    sys.exit(main())
