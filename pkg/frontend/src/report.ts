// Report tab: renders the service's statistics verbatim. All numbers come
// from the report payload; nothing is recomputed client-side.

import type { ReportView } from "./types.js";

function esc(value: string): string {
  return value.replace(/[&<>"]/g, (c) => ({ "&": "&amp;", "<": "&lt;", ">": "&gt;", '"': "&quot;" }[c] as string));
}

export function reportHtml(report: ReportView): string {
  const gapRows = report.gaps
    .map(
      (g) =>
        `<tr><td>${g.gap_ms}</td><td>${g.n}</td><td>${g.mean.toFixed(1)}</td>` +
        `<td>${g.sd === null ? "-" : g.sd.toFixed(2)}</td></tr>`,
    )
    .join("");
  const summaryTable =
    `<table><caption>reading accuracy by character gap</caption>` +
    `<thead><tr><th>gap (ms)</th><th>n</th><th>mean (%)</th><th>sd</th></tr></thead>` +
    `<tbody>${gapRows}</tbody></table>`;

  let anovaTable = "";
  if (report.anova) {
    const a = report.anova;
    const p = a.p_value < 0.0001 ? "&lt;0.0001" : a.p_value.toFixed(4);
    anovaTable =
      `<table><caption>one-way ANOVA</caption>` +
      `<thead><tr><th>source</th><th>sum of squares</th><th>df</th><th>mean square</th><th>F</th><th>p</th></tr></thead>` +
      `<tbody>` +
      `<tr><td>treatment</td><td>${a.ss_treatment.toFixed(2)}</td><td>${a.df_treatment}</td>` +
      `<td>${a.ms_treatment.toFixed(2)}</td><td>${a.f_stat.toFixed(4)}</td><td>${p}</td></tr>` +
      `<tr><td>error</td><td>${a.ss_error.toFixed(2)}</td><td>${a.df_error}</td>` +
      `<td>${a.ms_error.toFixed(2)}</td><td>-</td><td>-</td></tr>` +
      `<tr><td>total</td><td>${a.ss_total.toFixed(2)}</td><td>${a.df_treatment + a.df_error}</td>` +
      `<td>-</td><td>-</td><td>-</td></tr>` +
      `</tbody></table>`;
  } else if (report.anova_note) {
    anovaTable = `<p class="note">${esc(report.anova_note)}</p>`;
  }

  let pairwiseTable = "";
  if (report.pairwise.length > 0) {
    const rows = report.pairwise
      .map(
        (r) =>
          `<tr><td>${r.pair[0]} vs ${r.pair[1]}</td><td>${r.t_stat.toFixed(2)}</td>` +
          `<td class="${r.bonferroni.toLowerCase()}">${r.bonferroni}</td>` +
          `<td class="${r.holm.toLowerCase()}">${r.holm}</td></tr>`,
      )
      .join("");
    pairwiseTable =
      `<table><caption>pairwise vs ${report.reference} ms ` +
      `(family of ${report.pairwise[0]?.family_size})</caption>` +
      `<thead><tr><th>pair</th><th>t</th><th>Bonferroni</th><th>Holm</th></tr></thead>` +
      `<tbody>${rows}</tbody></table>`;
  }

  const usability =
    report.usability === null
      ? ""
      : `<p class="usability">average usability score: <strong>${report.usability.toFixed(1)}</strong> / 10</p>`;

  return `${summaryTable}${anovaTable}${pairwiseTable}${usability}`;
}
