import init, { wiener_table, distance_histogram, sample_moments } from "./pkg/wiener_wasm_demo.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function run(out, f) {
  try {
    f();
  } catch (e) {
    out.innerHTML = "";
    const p = document.createElement("p");
    p.className = "error";
    p.textContent = String(e);
    out.appendChild(p);
  }
}

function renderTable(columns, rows) {
  const head = columns.map((c) => `<th>${c}</th>`).join("");
  const body = rows
    .map((r) => "<tr>" + columns.map((c) => `<td>${r[c] ?? ""}</td>`).join("") + "</tr>")
    .join("");
  return `<table><thead><tr>${head}</tr></thead><tbody>${body}</tbody></table>`;
}

function showTable() {
  const out = $("t-out");
  run(out, () => {
    const family = $("t-family").value;
    const rows = JSON.parse(wiener_table(family, num("t-size")));
    const keys = { rect: ["m", "k"], stair: ["n"], diamond: ["t"] }[family];
    const cols = [...keys, "count", "wiener", "mean"];
    if (family !== "diamond") cols.push("scaled_mean");
    rows.forEach((r) => {
      if (r.scaled_mean != null) r.scaled_mean = r.scaled_mean.toFixed(6);
    });
    out.innerHTML = renderTable(cols, rows);
  });
}

function drawHistogram() {
  const info = $("h-info");
  const canvas = $("h-canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  run(info, () => {
    const h = JSON.parse(distance_histogram($("h-family").value, num("h-a"), num("h-b")));
    info.textContent = `${h.vertices} vertices, Wiener index ${h.wiener}`;
    const bins = h.bins;
    const maxD = bins[bins.length - 1].distance;
    const maxC = Math.max(...bins.map((b) => b.pairs));
    const pad = 24;
    const w = (canvas.width - 2 * pad) / (maxD + 1);
    const hgt = canvas.height - 2 * pad;
    ctx.fillStyle = "#3a6ea5";
    ctx.font = "11px sans-serif";
    for (const b of bins) {
      const bh = (b.pairs / maxC) * hgt;
      const x = pad + b.distance * w;
      ctx.fillRect(x + 1, canvas.height - pad - bh, Math.max(w - 2, 1), bh);
    }
    ctx.fillStyle = "#000";
    const step = Math.ceil((maxD + 1) / 20);
    for (let d = 0; d <= maxD; d += step) {
      ctx.fillText(String(d), pad + d * w + w / 2 - 3, canvas.height - 8);
    }
  });
}

function showSample() {
  const out = $("s-out");
  run(out, () => {
    const r = JSON.parse(
      sample_moments($("s-family").value, num("s-n"), $("s-alpha").value, num("s-samples"), num("s-seed")),
    );
    const rows = r.scaled_moments.map((m) => ({
      r: m.r,
      empirical: m.empirical.toFixed(5),
      "std. error": m.standard_error.toFixed(5),
      limit: Number(m.target).toFixed(5),
      tolerance: m.tolerance.toFixed(5),
      ok: m.within_tolerance ? "yes" : "no",
    }));
    const shape = r.family === "rect" ? `${r.m}×${r.k} rectangle` : `staircase ${r.n}`;
    out.innerHTML =
      `<p>${shape}, ${r.num_samples} samples, ${r.rng}, seed ${r.seed}</p>` +
      renderTable(["r", "empirical", "std. error", "limit", "tolerance", "ok"], rows);
  });
}

await init();
$("status").textContent = "Ready.";
$("t-run").onclick = showTable;
$("h-run").onclick = drawHistogram;
$("s-run").onclick = showSample;
showTable();
drawHistogram();
