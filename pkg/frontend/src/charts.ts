// Hand-rolled SVG chart of session accuracy against character gap.

export interface AccuracyPoint {
  gap_ms: number;
  accuracy_pct: number;
}

const WIDTH = 420;
const HEIGHT = 220;
const MARGIN = { left: 44, right: 12, top: 12, bottom: 30 };

export function accuracyChartSvg(points: AccuracyPoint[]): string {
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  if (points.length === 0) {
    return `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" class="chart"><text x="${WIDTH / 2}" y="${
      HEIGHT / 2
    }" text-anchor="middle" class="chart-empty">no scored words yet</text></svg>`;
  }
  const gaps = points.map((p) => p.gap_ms);
  const minGap = Math.min(...gaps, 0);
  const maxGap = Math.max(...gaps, 1);
  const x = (gap: number) =>
    MARGIN.left + (maxGap === minGap ? plotW / 2 : ((gap - minGap) / (maxGap - minGap)) * plotW);
  const y = (acc: number) => MARGIN.top + (1 - acc / 100) * plotH;

  const sorted = [...points].sort((a, b) => a.gap_ms - b.gap_ms);
  const path = sorted
    .map((p, i) => `${i === 0 ? "M" : "L"}${x(p.gap_ms).toFixed(1)},${y(p.accuracy_pct).toFixed(1)}`)
    .join(" ");
  const dots = sorted
    .map(
      (p) =>
        `<circle cx="${x(p.gap_ms).toFixed(1)}" cy="${y(p.accuracy_pct).toFixed(1)}" r="4">` +
        `<title>${p.gap_ms} ms: ${p.accuracy_pct.toFixed(1)}%</title></circle>`,
    )
    .join("");
  const yTicks = [0, 25, 50, 75, 100]
    .map(
      (v) =>
        `<text x="${MARGIN.left - 6}" y="${y(v).toFixed(1)}" text-anchor="end" class="tick">${v}</text>` +
        `<line x1="${MARGIN.left}" x2="${WIDTH - MARGIN.right}" y1="${y(v).toFixed(1)}" y2="${y(
          v,
        ).toFixed(1)}" class="grid"/>`,
    )
    .join("");
  const xTicks = sorted
    .map(
      (p) =>
        `<text x="${x(p.gap_ms).toFixed(1)}" y="${HEIGHT - 8}" text-anchor="middle" class="tick">${
          p.gap_ms
        }</text>`,
    )
    .join("");
  return (
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" class="chart">` +
    `${yTicks}${xTicks}` +
    `<path d="${path}" class="chart-line"/>` +
    `<g class="chart-dots">${dots}</g>` +
    `</svg>`
  );
}
