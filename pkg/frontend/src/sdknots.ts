// Knot-based SD authoring: a short list of (difference, value) points
// compiles to the condition/value rows the service stores. This only
// builds model data the analyst could equally type by hand; evaluation
// stays on the server.

export interface Knot {
  delta: number;
  value: number;
}

export interface SdRow {
  condition: string;
  value: string;
}

function formatNumber(value: number): string {
  if (Number.isInteger(value)) return String(value);
  return String(parseFloat(value.toPrecision(12)));
}

export function knotsToRows(knots: Knot[]): SdRow[] {
  if (knots.length < 2) throw new Error("an SD function needs at least two knots");
  for (let i = 1; i < knots.length; i++) {
    if (knots[i].delta <= knots[i - 1].delta) {
      throw new Error("knots must have strictly increasing differences");
    }
  }
  for (const knot of knots) {
    if (knot.value < -1 || knot.value > 1) {
      throw new Error(`value ${knot.value} is outside [-1, 1]`);
    }
  }

  const rows: SdRow[] = [];
  const first = knots[0];
  const last = knots[knots.length - 1];
  rows.push({ condition: `d <= ${formatNumber(first.delta)}`, value: formatNumber(first.value) });
  for (let i = 1; i < knots.length; i++) {
    const a = knots[i - 1];
    const b = knots[i];
    const condition = `${formatNumber(a.delta)} < d <= ${formatNumber(b.delta)}`;
    const slope = (b.value - a.value) / (b.delta - a.delta);
    if (Math.abs(slope) < 1e-12) {
      rows.push({ condition, value: formatNumber(a.value) });
      continue;
    }
    const intercept = a.value - slope * a.delta;
    let expression = slope === 1 ? "d" : slope === -1 ? "-d" : `${formatNumber(slope)}*d`;
    if (Math.abs(intercept) > 1e-12) {
      expression += intercept > 0 ? ` + ${formatNumber(intercept)}` : ` - ${formatNumber(-intercept)}`;
    }
    rows.push({ condition, value: expression });
  }
  rows.push({ condition: `d > ${formatNumber(last.delta)}`, value: formatNumber(last.value) });
  return rows;
}
