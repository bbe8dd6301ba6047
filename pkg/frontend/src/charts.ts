// Minimal dependency-free SVG line charts. Pixel placement is layout
// only; the numeric tick labels are selected (not computed) from the
// plotted series, so displayed numbers stay traceable to the service.

export interface ChartSeries {
  label: string;
  values: number[];
  color: string;
  dashed?: boolean;
}

export interface ChartOptions {
  width?: number;
  height?: number;
  title?: string;
  xLabels?: string[];
}

const PAD = { left: 86, right: 12, top: 24, bottom: 26 };

function extent(series: ChartSeries[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const s of series) {
    for (const v of s.values) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  if (!Number.isFinite(lo)) return [0, 1];
  if (lo === hi) return [lo, hi + 1];
  return [lo, hi];
}

function escapeXml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function renderLineChart(series: ChartSeries[], options: ChartOptions = {}): string {
  const width = options.width ?? 460;
  const height = options.height ?? 220;
  const innerW = width - PAD.left - PAD.right;
  const innerH = height - PAD.top - PAD.bottom;
  const [lo, hi] = extent(series);
  const n = Math.max(...series.map((s) => s.values.length), 1);

  const x = (i: number) => PAD.left + (n <= 1 ? innerW / 2 : (i / (n - 1)) * innerW);
  const y = (v: number) => PAD.top + innerH - ((v - lo) / (hi - lo)) * innerH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" ` +
    `class="chart" role="img">`,
  );
  if (options.title) {
    parts.push(
      `<text x="${PAD.left}" y="14" class="chart-title">` +
      `${escapeXml(options.title)}</text>`,
    );
  }
  // frame and min/max ticks (labels are the series' own extreme values)
  parts.push(
    `<rect x="${PAD.left}" y="${PAD.top}" width="${innerW}" height="${innerH}" ` +
    `fill="none" stroke="#ccc"/>`,
  );
  parts.push(
    `<text x="${PAD.left - 6}" y="${y(hi) + 4}" text-anchor="end" class="tick">` +
    `${escapeXml(String(hi))}</text>`,
  );
  parts.push(
    `<text x="${PAD.left - 6}" y="${y(lo) + 4}" text-anchor="end" class="tick">` +
    `${escapeXml(String(lo))}</text>`,
  );
  if (options.xLabels) {
    options.xLabels.forEach((label, i) => {
      parts.push(
        `<text x="${x(i)}" y="${height - 8}" text-anchor="middle" class="tick">` +
        `${escapeXml(label)}</text>`,
      );
    });
  }
  for (const s of series) {
    if (s.values.length === 0) continue;
    const points = s.values.map((v, i) => `${x(i)},${y(v)}`).join(" ");
    const dash = s.dashed ? ` stroke-dasharray="5 4"` : "";
    parts.push(
      `<polyline points="${points}" fill="none" stroke="${s.color}" ` +
      `stroke-width="2"${dash} data-series="${escapeXml(s.label)}" ` +
      `data-values="${escapeXml(s.values.map(String).join(","))}"/>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}
