import init, { nopt_sweep, continuity_scan, extrapolation_weights } from "./pkg/trotmit_wasm.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function plot(canvas, series, { xlabel = "", ylabel = "" } = {}) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, pad = 50;
  ctx.clearRect(0, 0, w, h);
  const xs = series.flatMap((s) => s.x), ys = series.flatMap((s) => s.y).filter(Number.isFinite);
  let [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  let [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  if (x0 === x1) x1 = x0 + 1;
  if (y0 === y1) { y0 -= 0.5; y1 += 0.5; }
  const px = (x) => pad + ((x - x0) / (x1 - x0)) * (w - 2 * pad);
  const py = (y) => h - pad + ((y0 - y) / (y1 - y0)) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#444";
  ctx.font = "12px sans-serif";
  for (let i = 0; i <= 4; i++) {
    const xv = x0 + ((x1 - x0) * i) / 4, yv = y0 + ((y1 - y0) * i) / 4;
    ctx.fillText(xv.toPrecision(3), px(xv) - 12, h - pad + 16);
    ctx.fillText(yv.toPrecision(3), 4, py(yv) + 4);
  }
  ctx.fillText(xlabel, w / 2, h - 8);
  ctx.fillText(ylabel, 4, pad - 12);

  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.lineWidth = s.width ?? 1.5;
    ctx.beginPath();
    s.x.forEach((x, i) => (i ? ctx.lineTo(px(x), py(s.y[i])) : ctx.moveTo(px(x), py(s.y[i]))));
    ctx.stroke();
  }
}

function guarded(outId, fn) {
  return () => {
    const out = $(outId);
    out.classList.remove("err");
    out.textContent = "running...";
    setTimeout(() => {
      try {
        fn(out);
      } catch (e) {
        out.classList.add("err");
        out.textContent = String(e.message ?? e);
      }
    }, 10);
  };
}

$("sw-run").onclick = guarded("sw-out", (out) => {
  const params = {
    qubits: num("sw-qubits"), time: num("sw-time"), noise_boost: num("sw-boost"),
    steps_min: num("sw-min"), steps_max: num("sw-max"),
  };
  const r = JSON.parse(nopt_sweep(JSON.stringify(params)));
  plot($("sw-plot"), [
    { x: r.steps, y: r.noiseless, color: "#1f77b4" },
    { x: r.steps, y: r.noisy, color: "#d62728" },
  ], { xlabel: "N", ylabel: "trace distance" });
  const fit = r.fitted_optimum == null ? "n/a" : r.fitted_optimum.toFixed(2);
  out.textContent = `argmin N = ${r.argmin}, fitted optimum = ${fit}`;
});

$("sc-run").onclick = guarded("sc-out", (out) => {
  const params = {
    qubits: num("sc-qubits"), noise_boost: num("sc-boost"), boost_node: num("sc-node"),
    steps_min: num("sc-min"), steps_max: num("sc-max"),
  };
  const r = JSON.parse(continuity_scan(JSON.stringify(params)));
  const eps = r.steps.map((n) => 1 / n);
  plot($("sc-plot"), [
    { x: eps, y: r.raw, color: "#7f7f7f" },
    { x: eps, y: r.linear, color: "#2ca02c" },
    { x: eps, y: r.exponential, color: "#9467bd" },
    { x: [eps[0], eps[eps.length - 1]], y: [r.exact, r.exact], color: "#000", width: 1 },
  ], { xlabel: "1/N", ylabel: "<X_1>" });
  const [ln, ld] = r.best_linear, [en, ed] = r.best_exponential;
  out.textContent =
    `exact ${r.exact.toFixed(6)}\n` +
    `linear best N = ${ln}, delta^2 = ${ld.toExponential(3)}\n` +
    `exponential best N = ${en}, delta^2 = ${ed.toExponential(3)}`;
});

$("w-run").onclick = guarded("w-out", (out) => {
  const kind = document.querySelector("input[name=wk]:checked").value;
  const list = $("w-list").value.split(/[\s,;]+/).filter(Boolean).map(Number);
  const r = JSON.parse(extrapolation_weights(JSON.stringify({ [kind]: list })));
  const rows = r.nodes.map((a, i) => `<tr><td>${list[i]}</td><td>${a.toFixed(4)}</td><td>${r.weights[i].toFixed(6)}</td></tr>`);
  out.innerHTML =
    `<table><tr><th>${kind === "steps" ? "N" : "boost"}</th><th>node</th><th>weight</th></tr>${rows.join("")}</table>` +
    `<p>sampling cost sum(weight^2) = ${r.cost.toFixed(4)}</p>`;
});

await init();
$("w-run").click();
