"""
Report Generator - Formats and outputs analysis reports
"""

import json
from contextlib import contextmanager
from typing import Dict, Iterator, List, Sequence

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
from rich.console import Console
from rich.panel import Panel
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.table import Table
from rich.text import Text

from .abelian import AbelianInvariants, CyclicEpi
from .enumeration import Ball, BallStats, CosetTable
from .obstruction import ConclusionKind, IdentityResult, ObstructionReport, QuotientResult
from .orderability import CertificateCheck, OrderVerdict, VerdictKind
from .rewriting import RewritingSystem
from .subgroups import SubgroupPresentation
from .words import render_word


class ReportFormatter:
    """Formats analysis results for the console and for files"""

    VERDICT_STYLES = {
        VerdictKind.NOT_LEFT_ORDERABLE: ("red", "NOT_LEFT_ORDERABLE"),
        VerdictKind.CONSISTENT_AT_RADIUS: ("green", "CONSISTENT_AT_RADIUS"),
        VerdictKind.INCONCLUSIVE: ("yellow", "INCONCLUSIVE"),
    }

    def __init__(self, console: Console = None):
        self.console = console or Console()

    def _print_header(self, title: str, subject: str = ""):
        header_text = Text()
        header_text.append("═" * 70 + "\n", style="blue")
        header_text.append(f"  {title}\n", style="bold white")
        if subject:
            header_text.append("  Subject: ", style="dim")
            header_text.append(f"{subject}\n", style="bold cyan")
        header_text.append("═" * 70, style="blue")
        self.console.print(header_text)

    def _section(self, title: str):
        self.console.print(f"\n[bold cyan]{title}[/bold cyan]")
        self.console.print("─" * 50)

    def print_verdict(self, verdict: OrderVerdict, subject: str = "", certificate_path: str = ""):
        """Print an orderability verdict panel"""
        self._print_header("LEFT-ORDERABILITY SEARCH", subject)
        color, label = self.VERDICT_STYLES[verdict.kind]

        body = Text()
        body.append("\n  VERDICT: ", style="bold")
        body.append(f"{label}\n", style=f"bold {color}")
        body.append(f"  Radius: {verdict.radius}\n")
        if verdict.reason:
            body.append(f"  Reason: {verdict.reason.value}", style="yellow")
            body.append(f" ({verdict.detail})\n" if verdict.detail else "\n", style="dim")
        if verdict.kind is VerdictKind.CONSISTENT_AT_RADIUS:
            body.append(f"  Cone size: {len(verdict.witness)}\n")
            body.append("  (evidence only, not a proof of orderability)\n", style="dim")
        if verdict.certificate:
            body.append(f"  Certificate leaves: {len(verdict.certificate.leaves())}, "
                        f"depth {verdict.certificate.depth()}\n")
        if certificate_path:
            body.append(f"  Certificate saved to: {certificate_path}\n", style="green")
        self.console.print(Panel(body, title="[bold]Verdict[/bold]", border_style=color))

        stats = verdict.stats
        table = Table(show_header=True, header_style="bold white", box=None)
        table.add_column("Radius", justify="right")
        table.add_column("Outcome")
        for radius, kind in verdict.history:
            table.add_row(str(radius), kind)
        if verdict.history:
            self.console.print(table)
        self.console.print(
            f"[dim]nodes {stats.nodes}, depth {stats.max_depth}, ball {stats.ball_size} "
            f"({stats.table_mode or 'n/a'}), {stats.elapsed_seconds:.2f}s[/dim]"
        )

    def print_certificate_check(self, check: CertificateCheck, subject: str = ""):
        self._print_header("CERTIFICATE CHECK", subject)
        if check.valid:
            self.console.print(f"[bold green]✓ VALID[/bold green]  {check.leaves_checked} leaves, "
                               f"{check.steps_checked} steps")
        else:
            self.console.print(f"[bold red]✗ INVALID[/bold red]  {check.failure}")

    def print_system(self, system: RewritingSystem, subject: str = "", show_rules: int = 0):
        self._print_header("REWRITING SYSTEM", subject)
        color = "green" if system.confluent else "red"
        self.console.print(f"  Status: [bold {color}]{system.status.value}[/bold {color}]")
        stats = system.stats
        self.console.print(f"  Rules: {stats.rule_count}   max lhs: {stats.max_lhs_length}   "
                           f"time: {stats.elapsed_seconds:.2f}s")
        if stats.stop_reason:
            self.console.print(f"  [yellow]Stopped: {stats.stop_reason}[/yellow]")
        if show_rules:
            table = Table(show_header=True, header_style="bold", box=None)
            table.add_column("lhs", style="cyan")
            table.add_column("rhs")
            for lhs, rhs in system.rules[:show_rules]:
                table.add_row(lhs, render_word(rhs))
            self.console.print(table)

    def print_ball(self, stats: BallStats, ball: Ball, subject: str = ""):
        self._print_header("BALL GROWTH", subject)
        table = Table(show_header=True, header_style="bold white", box=None)
        table.add_column("r", justify="right")
        table.add_column("#B(r)", justify="right")
        for radius, size in enumerate(stats.sizes):
            table.add_row(str(radius), str(size))
        self.console.print(table)
        if stats.growth_constant is not None:
            self.console.print(f"\n  Fit over r in {list(stats.fit_radii)}: "
                               f"#B(r) ≈ {stats.growth_prefactor:.3f} · {stats.growth_constant:.3f}^r")
        self.console.print(f"  Product table: {ball.table_mode}")

    def print_homology(self, invariants: AbelianInvariants, subject: str = ""):
        self._print_header("FIRST HOMOLOGY", subject)
        self.console.print(f"  H1 = [bold]{invariants.render()}[/bold]")
        if invariants.is_finite:
            self.console.print(f"  Order {invariants.order}, exponent {invariants.exponent}")

    def print_kernels(self, epis: Sequence[CyclicEpi], presentations: Sequence[SubgroupPresentation] = (),
                      subject: str = ""):
        self._print_header("CYCLIC QUOTIENT KERNELS", subject)
        table = Table(show_header=True, header_style="bold white", box=None)
        table.add_column("#", justify="right")
        table.add_column("Epimorphism")
        table.add_column("Gens", justify="right")
        table.add_column("Rels", justify="right")
        for i, epi in enumerate(epis, 1):
            gens = rels = ""
            if i <= len(presentations):
                gens = str(presentations[i - 1].presentation.rank)
                rels = str(len(presentations[i - 1].presentation.relators))
            table.add_row(str(i), epi.render(), gens, rels)
        self.console.print(table)

    def print_low_index(self, tables: Sequence[CosetTable], subject: str = ""):
        self._print_header("LOW-INDEX SUBGROUPS", subject)
        table = Table(show_header=True, header_style="bold white", box=None)
        table.add_column("#", justify="right")
        table.add_column("Index", justify="right")
        table.add_column("Normal", justify="center")
        for i, t in enumerate(tables, 1):
            table.add_row(str(i), str(t.index), "[green]yes[/green]" if t.normal else "no")
        self.console.print(table)

    def print_obstruction(self, report: ObstructionReport, subject: str = ""):
        self._print_header("CIRCLE-ACTION OBSTRUCTION", subject)
        self.console.print(f"  H1 = {report.h1.render()}   "
                           f"H1(Z/2) trivial: {'yes' if report.z2_trivial else 'no'}")
        if report.ambient_verdict:
            self.console.print(f"  G: {report.ambient_verdict.kind.value} "
                               f"(radius {report.ambient_verdict.radius})")
        if report.n_candidates:
            self.console.print(f"  Candidate orders: {report.n_candidates}")
        if report.subgroup_results:
            table = Table(show_header=True, header_style="bold white", box=None)
            table.add_column("Index", justify="right")
            table.add_column("Normal", justify="center")
            table.add_column("Gens", justify="right")
            table.add_column("Verdict")
            for result in report.subgroup_results:
                table.add_row(
                    str(result.index),
                    "yes" if result.normal else "no",
                    str(result.presentation.presentation.rank),
                    result.verdict.kind.value if result.verdict else f"[red]{result.error}[/red]",
                )
            self.console.print(table)
        conclusion = report.conclusion
        color = {
            ConclusionKind.NO_FAITHFUL_CIRCLE_ACTION: "green",
            ConclusionKind.INCONCLUSIVE: "yellow",
            ConclusionKind.NOT_APPLICABLE: "blue",
        }[conclusion.kind]
        text = Text()
        text.append(f"\n  {conclusion.kind.value.replace('_', ' ').upper()}\n", style=f"bold {color}")
        if conclusion.reason:
            text.append(f"  {conclusion.reason}\n", style="dim")
        self.console.print(Panel(text, title="[bold]Conclusion[/bold]", border_style=color))

    def print_identities(self, results: Sequence[IdentityResult], checks: Dict[str, CertificateCheck] = None,
                         subject: str = ""):
        self._print_header("IDENTITY CORPUS", subject)
        table = Table(show_header=True, header_style="bold white", box=None)
        table.add_column("Label", style="dim")
        table.add_column("Length", justify="right")
        table.add_column("Normal form")
        table.add_column("OK", justify="center")
        for result in results:
            mark = "[green]✓[/green]" if result.holds else "[red]✗[/red]"
            table.add_row(result.label, str(len(result.word)), render_word(result.normal_form), mark)
        self.console.print(table)
        for label, check in (checks or {}).items():
            if check.valid:
                self.console.print(f"  [green]✓[/green] case analysis '{label}': {check.leaves_checked} leaves")
            else:
                self.console.print(f"  [red]✗[/red] case analysis '{label}': {check.failure}")

    def print_quotients(self, results: Sequence[QuotientResult], subject: str = ""):
        self._print_header("CYCLIC QUOTIENTS", subject)
        table = Table(show_header=True, header_style="bold white", box=None)
        table.add_column("w")
        table.add_column("|G/<<w>>|", justify="right")
        table.add_column("H1")
        table.add_column("OK", justify="center")
        for result in results:
            order = "overflow" if result.overflow else str(result.order)
            mark = "[green]✓[/green]" if result.ok else "[red]✗[/red]"
            table.add_row(render_word(result.word), order,
                          result.invariants.render() if result.invariants else "", mark)
        self.console.print(table)

    def print_batch(self, rows: List[Dict], subject: str = ""):
        self._print_header("BATCH REPORT", subject)
        table = Table(show_header=True, header_style="bold white")
        table.add_column("Name", style="cyan")
        table.add_column("H1")
        table.add_column("Ord", justify="center")
        table.add_column("r", justify="right")
        table.add_column("Time", justify="right")
        table.add_column("Note", style="dim")
        for row in rows:
            ord_symbol = row.get("ord") or ""
            color = {"N": "red", "O": "green"}.get(ord_symbol, "white")
            table.add_row(
                row["name"],
                row.get("h1") or "",
                f"[{color}]{ord_symbol}[/{color}]",
                "" if row.get("radius") is None else str(row["radius"]),
                f"{row.get('seconds', 0.0):.1f}s",
                row.get("error") or row.get("verdict") or "",
            )
        self.console.print(table)

    def to_json(self, payload: Dict) -> str:
        """Convert a report payload to a JSON string"""
        return json.dumps(payload, indent=2)

    def to_markdown(self, report: ObstructionReport, subject: str = "") -> str:
        """Convert an obstruction report to Markdown"""
        md = ["# Circle-Action Obstruction Report"]
        if subject:
            md.append(f"\n**Group:** {subject}")
        md.append(f"**H1:** {report.h1.render()}")
        md.append(f"**H1 with Z/2 coefficients trivial:** {'yes' if report.z2_trivial else 'no'}")
        if report.ambient_verdict:
            md.append(f"**G:** {report.ambient_verdict.kind.value} at radius {report.ambient_verdict.radius}")
        if report.subgroup_results:
            md.append("\n## Finite-index subgroups\n")
            md.append("| Index | Normal | Generators | Verdict |")
            md.append("|-------|--------|------------|---------|")
            for result in report.subgroup_results:
                verdict = result.verdict.kind.value if result.verdict else result.error
                md.append(f"| {result.index} | {'yes' if result.normal else 'no'} | "
                          f"{result.presentation.presentation.rank} | {verdict} |")
        conclusion = report.conclusion
        md.append(f"\n## Conclusion\n\n{conclusion.kind.value}")
        if conclusion.reason:
            md.append(f"\n{conclusion.reason}")
        return "\n".join(md)

    def save_report(self, payload, filepath: str, format: str = "json", subject: str = ""):
        """Save report to file"""
        if format == "json":
            content = self.to_json(payload if isinstance(payload, dict) else payload.to_dict())
        elif format == "md" or format == "markdown":
            if not isinstance(payload, ObstructionReport):
                raise ValueError("Markdown output is only available for obstruction reports")
            content = self.to_markdown(payload, subject)
        else:
            raise ValueError(f"Unsupported format: {format}")

        with open(filepath, 'w') as f:
            f.write(content + "\n")

        self.console.print(f"[green]Report saved to:[/green] {filepath}")


class ProgressDisplay:
    """Display progress for long-running operations"""

    def __init__(self, console: Console = None, quiet: bool = False):
        self.console = console or Console(stderr=True)
        self.quiet = quiet

    @contextmanager
    def spinner(self, description: str) -> Iterator[None]:
        """Transient spinner around a long phase"""
        if self.quiet:
            yield
            return
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            console=self.console,
            transient=True
        ) as progress:
            progress.add_task(description, total=None)
            yield

    def print_status(self, message: str, style: str = ""):
        """Print status message"""
        if self.quiet:
            return
        if style:
            self.console.print(f"[{style}]{message}[/{style}]")
        else:
            self.console.print(message)

    def print_error(self, message: str):
        """Print error message"""
        self.console.print(f"[bold red]Error:[/bold red] {message}")

    def print_success(self, message: str):
        """Print success message"""
        if not self.quiet:
            self.console.print(f"[bold green]✓[/bold green] {message}")

    def print_warning(self, message: str):
        """Print warning message"""
        if not self.quiet:
            self.console.print(f"[bold yellow]⚠[/bold yellow] {message}")


def ball_frame(stats: BallStats) -> pd.DataFrame:
    """Cumulative ball sizes, one row per radius"""
    return pd.DataFrame({"radius": list(range(len(stats.sizes))), "size": stats.sizes})


def save_growth_plot(stats: BallStats, filepath: str, subject: str = ""):
    """Write #B(r) on a log scale with the fitted exponential"""
    radii = np.arange(len(stats.sizes))
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.semilogy(radii, stats.sizes, "o-", color="#1f77b4", label="#B(r)")
    if stats.growth_constant is not None:
        fitted = stats.growth_prefactor * stats.growth_constant ** radii
        ax.semilogy(radii, fitted, "--", color="#d62728",
                    label=f"{stats.growth_prefactor:.2f} · {stats.growth_constant:.3f}^r")
    ax.set_xlabel("radius r")
    ax.set_ylabel("elements in ball")
    ax.set_title(f"Ball growth{': ' + subject if subject else ''}", weight="bold")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    plt.tight_layout()
    plt.savefig(filepath, dpi=150, bbox_inches="tight", facecolor="white")
    plt.close(fig)
