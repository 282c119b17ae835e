import init, { coefficient_chart, homotopy_table, multiply } from "./pkg/realk_web.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";
const CELL = 22;

function showError(target, e) {
  target.replaceChildren();
  const p = document.createElement("p");
  p.className = "error";
  p.textContent = e instanceof Error ? e.message : String(e);
  target.append(p);
}

function svgEl(name, attrs) {
  const el = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
  return el;
}

function drawChart() {
  const target = $("chart");
  const ring = $("chart-ring").value;
  const pMin = Number($("chart-pmin").value);
  const pMax = Number($("chart-pmax").value);
  const qMin = Number($("chart-qmin").value);
  let data;
  try {
    data = JSON.parse(coefficient_chart(ring, pMin, pMax, qMin));
  } catch (e) {
    return showError(target, e);
  }
  const qMax = Math.max(pMax, qMin);
  const width = (pMax - pMin + 2) * CELL;
  const height = (qMax - qMin + 2) * CELL;
  const x = (p) => (p - pMin + 1) * CELL;
  const y = (q) => (qMax - q + 1) * CELL;
  const svg = svgEl("svg", { width, height });
  if (pMin <= 0 && 0 <= pMax) svg.append(svgEl("line", { x1: x(0), y1: 0, x2: x(0), y2: height, stroke: "#bbb" }));
  if (qMin <= 0 && 0 <= qMax) svg.append(svgEl("line", { x1: 0, y1: y(0), x2: width, y2: y(0), stroke: "#bbb" }));
  for (const c of data.cells) {
    const g = svgEl("g", {});
    const title = svgEl("title", {});
    const parts = [];
    if (c.free_rank) parts.push(c.free_rank === 1 ? "Z" : `Z^${c.free_rank}`);
    if (c.z2_rank) parts.push(c.z2_rank === 1 ? "Z/2" : `(Z/2)^${c.z2_rank}`);
    title.textContent = `(${c.p}, ${c.q}): ${parts.join(" + ")}`;
    g.append(title);
    if (c.free_rank) {
      g.append(svgEl("rect", { x: x(c.p) - 6, y: y(c.q) - 6, width: 12, height: 12, fill: "#1f5fa8" }));
    } else {
      g.append(svgEl("circle", { cx: x(c.p), cy: y(c.q), r: 4, fill: "#c0392b" }));
    }
    svg.append(g);
  }
  target.replaceChildren(svg);
}

function drawTable() {
  const target = $("table");
  let data;
  try {
    data = JSON.parse(homotopy_table($("table-space").value, Number($("table-kmax").value), Number($("table-nmax").value)));
  } catch (e) {
    return showError(target, e);
  }
  const table = document.createElement("table");
  const head = table.insertRow();
  for (const h of ["k", ...data.columns]) {
    const th = document.createElement("th");
    th.textContent = h;
    head.append(th);
  }
  for (const row of data.rows) {
    const tr = table.insertRow();
    tr.insertCell().textContent = row.k;
    for (const g of row.groups) tr.insertCell().textContent = g;
  }
  target.replaceChildren(table);
}

function runMultiply() {
  const out = $("mul-out");
  try {
    out.className = "out";
    out.textContent = multiply($("mul-ring").value, $("mul-x").value, $("mul-y").value);
  } catch (e) {
    out.className = "out error";
    out.textContent = e instanceof Error ? e.message : String(e);
  }
}

await init();
$("chart-go").addEventListener("click", drawChart);
$("table-go").addEventListener("click", drawTable);
$("mul-go").addEventListener("click", runMultiply);
drawChart();
drawTable();
runMultiply();
