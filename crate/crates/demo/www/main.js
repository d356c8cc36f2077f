import init, { four_point_height, orbit_scan, limit_crosscheck } from "./pkg/mhx_demo.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

const DEFAULT_POINTS = [["0", "0"], ["inf", ""], ["1", "0"], ["3", "1"]];

function pointInputs() {
  const box = $("points");
  ["p", "q", "r", "s"].forEach((name, i) => {
    const [re, im] = DEFAULT_POINTS[i];
    box.insertAdjacentHTML("beforeend",
      `${name} = <input id="${name}-re" value="${re}"> + <input id="${name}-im" value="${im}"> i &nbsp; `);
  });
}

function readPoints() {
  return ["p", "q", "r", "s"].flatMap((name) => {
    const re = $(`${name}-re`).value.trim();
    if (re === "inf" || re === "∞") return [Infinity, Infinity];
    return [Number(re), Number($(`${name}-im`).value || 0)];
  });
}

function show(el, text, isError) {
  el.textContent = text;
  el.className = isError ? "out err" : "out";
}

function axes(ctx, box, xr, yr, xlabel, ylabel) {
  const { left, top, width, height } = box;
  ctx.strokeStyle = "#999";
  ctx.strokeRect(left, top, width, height);
  ctx.fillStyle = "#333";
  ctx.font = "12px sans-serif";
  ctx.fillText(xlabel, left + width / 2 - 20, top + height + 30);
  ctx.fillText(ylabel, 4, top - 8);
  for (let i = 0; i <= 4; i++) {
    const x = xr[0] + (i / 4) * (xr[1] - xr[0]);
    const y = yr[0] + (i / 4) * (yr[1] - yr[0]);
    ctx.fillText(x.toPrecision(3), left + (i / 4) * width - 10, top + height + 15);
    ctx.fillText(y.toPrecision(4), 4, top + height - (i / 4) * height + 4);
  }
}

function plot(canvas, series, xlabel, ylabel) {
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const box = { left: 70, top: 24, width: canvas.width - 90, height: canvas.height - 64 };
  const pts = series.flatMap((s) => s.points).filter(([x, y]) => Number.isFinite(x) && Number.isFinite(y));
  if (pts.length === 0) return;
  let xr = [Math.min(...pts.map((p) => p[0])), Math.max(...pts.map((p) => p[0]))];
  let yr = [Math.min(...pts.map((p) => p[1])), Math.max(...pts.map((p) => p[1]))];
  if (xr[0] === xr[1]) xr = [xr[0] - 1, xr[1] + 1];
  if (yr[0] === yr[1]) yr = [yr[0] - 1, yr[1] + 1];
  const pad = 0.05 * (yr[1] - yr[0]);
  yr = [yr[0] - pad, yr[1] + pad];
  const sx = (x) => box.left + ((x - xr[0]) / (xr[1] - xr[0])) * box.width;
  const sy = (y) => box.top + box.height - ((y - yr[0]) / (yr[1] - yr[0])) * box.height;
  axes(ctx, box, xr, yr, xlabel, ylabel);
  series.forEach((s, k) => {
    ctx.strokeStyle = s.color;
    ctx.fillStyle = s.color;
    ctx.setLineDash(s.dashed ? [6, 4] : []);
    ctx.beginPath();
    let started = false;
    for (const [x, y] of s.points) {
      if (!Number.isFinite(y)) { started = false; continue; }
      if (started) ctx.lineTo(sx(x), sy(y)); else ctx.moveTo(sx(x), sy(y));
      started = true;
    }
    ctx.stroke();
    ctx.setLineDash([]);
    ctx.fillText(s.label, box.left + 10, box.top + 16 + 16 * k);
  });
}

function runHeight() {
  try {
    const h = four_point_height(new Float64Array(readPoints()));
    show($("height-out"), `height = ${h.toPrecision(12)}`, false);
  } catch (e) {
    show($("height-out"), String(e.message ?? e), true);
  }
}

function runScan() {
  try {
    const scan = orbit_scan(num("scan-seed"), num("scan-pairs"), num("scan-angle"), num("scan-decades"));
    const x = Array.from(scan.moduli, (r) => -Math.log10(r));
    const h = Array.from(scan.h);
    const ht = Array.from(scan.h_tilde);
    const last = ht[ht.length - 1];
    show($("scan-out"), `μ = ${scan.mu.toPrecision(6)}, H = ${scan.limit.toPrecision(10)}, |h̃ − H| at the last point = ${Math.abs(last - scan.limit).toExponential(3)}`, false);
    plot($("scan-plot"), [
      { label: "h(t)", color: "#1f77b4", points: x.map((v, i) => [v, h[i]]) },
      { label: "h̃(t) = h(t) + μ log|t|", color: "#d62728", points: x.map((v, i) => [v, ht[i]]) },
      { label: "H", color: "#2ca02c", dashed: true, points: [[x[0], scan.limit], [x[x.length - 1], scan.limit]] },
    ], "−log₁₀ |t|", "height");
  } catch (e) {
    show($("scan-out"), String(e.message ?? e), true);
  }
}

function runCrosscheck() {
  try {
    const flat = limit_crosscheck(num("cc-seed"), num("cc-pairs"), num("cc-x"), 6);
    const rows = [];
    for (let i = 0; i < flat.length; i += 3) rows.push([flat[i], flat[i + 1], flat[i + 2]]);
    const lg = (v) => Math.log10(Math.max(v, 1e-17));
    plot($("cc-plot"), [
      { label: "with F̃", color: "#d62728", points: rows.map((r) => [Math.log2(r[0]), lg(r[1])]) },
      { label: "with F", color: "#1f77b4", points: rows.map((r) => [Math.log2(r[0]), lg(r[2])]) },
    ], "log₂ Im z", "log₁₀ distance");
  } catch (e) {
    const ctx = $("cc-plot").getContext("2d");
    ctx.clearRect(0, 0, 800, 300);
    ctx.fillStyle = "#b00";
    ctx.fillText(String(e.message ?? e), 20, 30);
  }
}

await init();
pointInputs();
$("height-go").addEventListener("click", runHeight);
$("scan-go").addEventListener("click", runScan);
$("cc-go").addEventListener("click", runCrosscheck);
runHeight();
runScan();
runCrosscheck();
