import init, { walk_sphere, fan_counts, certify } from "./pkg/fanflip_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);
const params = () => [num("dim"), num("steps"), num("seed")];
const labelParams = () => [...params(), num("bound"), num("lseed")];

function show(summary, data) {
  $("summary").className = "";
  $("summary").textContent = summary;
  $("raw").textContent = JSON.stringify(data, null, 2);
}

function fail(err) {
  $("summary").className = "err";
  $("summary").textContent = String(err.message ?? err);
  $("raw").textContent = "";
  $("plot").innerHTML = "";
}

const NS = "http://www.w3.org/2000/svg";
function el(name, attrs, text) {
  const e = document.createElementNS(NS, name);
  for (const [k, v] of Object.entries(attrs)) e.setAttribute(k, v);
  if (text !== undefined) e.textContent = text;
  return e;
}

// Facet count (grey) and alpha+ (blue, odd values filled) against move index.
function plotTrace(trace) {
  const svg = $("plot");
  svg.innerHTML = "";
  if (trace.length === 0) return;
  const W = 820, H = 260, pad = 40;
  const maxStep = Math.max(1, trace.length - 1);
  const maxY = Math.max(...trace.map((t) => Math.max(t.facets, t.alpha_plus)));
  const x = (i) => pad + (i / maxStep) * (W - 2 * pad);
  const y = (v) => H - pad - (v / maxY) * (H - 2 * pad);
  svg.append(el("line", { x1: pad, y1: H - pad, x2: W - pad, y2: H - pad, stroke: "#999" }));
  svg.append(el("line", { x1: pad, y1: pad, x2: pad, y2: H - pad, stroke: "#999" }));
  svg.append(el("text", { x: pad, y: pad - 10, "font-size": 12 }, `max ${maxY}`));
  svg.append(el("text", { x: W - pad - 60, y: H - 10, "font-size": 12 }, `${maxStep} moves`));
  const line = (key, color) =>
    el("polyline", {
      points: trace.map((t, i) => `${x(i)},${y(t[key])}`).join(" "),
      fill: "none",
      stroke: color,
      "stroke-width": 2,
    });
  svg.append(line("facets", "#aaa"), line("alpha_plus", "#1f5fbf"));
  trace.forEach((t, i) => {
    const odd = t.alpha_plus % 2 === 1;
    svg.append(el("circle", { cx: x(i), cy: y(t.alpha_plus), r: 3, fill: odd ? "#1f5fbf" : "#fff", stroke: "#1f5fbf" }));
  });
  svg.append(el("text", { x: W - pad - 200, y: pad - 10, "font-size": 12, fill: "#1f5fbf" }, "α⁺ (filled = odd)"));
  svg.append(el("text", { x: W - pad - 80, y: pad - 10, "font-size": 12, fill: "#888" }, "facets"));
}

function run(fn) {
  try {
    fn();
  } catch (e) {
    fail(e);
  }
}

await init();

$("walk").onclick = () =>
  run(() => {
    const r = JSON.parse(walk_sphere(...params()));
    $("plot").innerHTML = "";
    show(`f-vector (${r.f_vector.join(", ")}), χ = ${r.euler_characteristic}, ${r.moves.length} moves`, r);
  });

$("count").onclick = () =>
  run(() => {
    const r = JSON.parse(fan_counts(...labelParams()));
    $("plot").innerHTML = "";
    show(`α⁺ = ${r.alpha_plus}, α⁻ = ${r.alpha_minus} on f-vector (${r.f_vector.join(", ")})`, r);
  });

$("certify").onclick = () =>
  run(() => {
    const r = JSON.parse(certify(...labelParams(), num("budget")));
    if (!r.certified) {
      $("plot").innerHTML = "";
      show(`α⁺ = ${r.alpha_plus}; ${r.message}`, r);
      return;
    }
    plotTrace(r.trace);
    show(`α⁺ = ${r.alpha_plus}, reduced to the cross polytope in ${r.trace.length - 1} Z2-moves; α⁺ stayed odd throughout`, r);
  });
