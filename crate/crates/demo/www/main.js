import init, { toeplitz_roots, factor_census, torsion_certificate } from "./pkg/locoh_demo.js";

const $ = (id) => document.getElementById(id);

function guarded(infoId, f) {
  return () => {
    const info = $(infoId);
    info.classList.remove("err");
    try {
      f(info);
    } catch (e) {
      info.textContent = String(e);
      info.classList.add("err");
    }
  };
}

function plotRoots(data) {
  const c = $("roots-canvas");
  const g = c.getContext("2d");
  const W = c.width, H = c.height, pad = 30;
  g.clearRect(0, 0, W, H);
  const ys = data.curve.map((p) => p[1]);
  const ymax = Math.max(1, ...ys.map(Math.abs).filter((y) => y < 1e6));
  const lim = Math.min(ymax, 4);
  const X = (t) => pad + ((t + 2.2) / 4.4) * (W - 2 * pad);
  const Y = (y) => H / 2 - (Math.max(-lim, Math.min(lim, y)) / lim) * (H / 2 - pad);
  g.strokeStyle = "#aaa";
  g.beginPath(); g.moveTo(pad, H / 2); g.lineTo(W - pad, H / 2); g.stroke();
  g.beginPath(); g.moveTo(X(0), pad); g.lineTo(X(0), H - pad); g.stroke();
  g.strokeStyle = "#1565c0";
  g.lineWidth = 2;
  g.beginPath();
  data.curve.forEach(([t, y], i) => (i ? g.lineTo(X(t), Y(y)) : g.moveTo(X(t), Y(y))));
  g.stroke();
  g.fillStyle = "#c62828";
  for (const r of data.roots) {
    g.beginPath(); g.arc(X(r), H / 2, 4, 0, 2 * Math.PI); g.fill();
  }
  g.fillStyle = "#444";
  g.fillText("-2", X(-2) - 6, H / 2 + 14);
  g.fillText("2", X(2) - 3, H / 2 + 14);
}

function plotCensus(data) {
  const c = $("census-canvas");
  const g = c.getContext("2d");
  const W = c.width, H = c.height, pad = 30;
  g.clearRect(0, 0, W, H);
  const rows = data.rows;
  const top = Math.max(1, ...rows.map((r) => r.cumulative_count));
  const bw = (W - 2 * pad) / rows.length;
  rows.forEach((r, i) => {
    const h = (r.cumulative_count / top) * (H - 2 * pad);
    const fresh = (r.new_factors.length / top) * (H - 2 * pad);
    g.fillStyle = "#90caf9";
    g.fillRect(pad + i * bw + 2, H - pad - h, bw - 4, h);
    g.fillStyle = "#1565c0";
    g.fillRect(pad + i * bw + 2, H - pad - h, bw - 4, fresh);
    g.fillStyle = "#444";
    g.fillText(String(r.n), pad + i * bw + bw / 2 - 4, H - pad + 14);
  });
  g.fillText(`cumulative distinct factors (dark: new at n), max ${top}`, pad, pad - 10);
}

async function main() {
  await init();

  $("roots-go").onclick = guarded("roots-info", (info) => {
    const data = JSON.parse(toeplitz_roots(Number($("roots-n").value)));
    const worst = Math.max(...data.residuals);
    info.textContent = `Q_${data.n} = ${data.polynomial}; largest |Q_n(1, 2cos(rπ/(n+1)))| = ${worst.toExponential(2)}`;
    plotRoots(data);
  });

  $("census-go").onclick = guarded("census-info", (info) => {
    const data = JSON.parse(factor_census(Number($("census-n").value), Number($("census-p").value)));
    const last = data.rows[data.rows.length - 1];
    info.textContent = `${last.cumulative_count} distinct irreducible factors for n ≤ ${data.n_max} over GF(${data.p}). ${data.note}.`;
    $("census-table").textContent = data.rows
      .map((r) => `${String(r.n).padStart(3)}  ${r.factors.map((f, i) => r.multiplicities[i] > 1 ? `(${f})^${r.multiplicities[i]}` : `(${f})`).join(" ")}`)
      .join("\n");
    plotCensus(data);
  });

  $("torsion-go").onclick = guarded("torsion-info", (info) => {
    const data = JSON.parse(torsion_certificate(Number($("torsion-p").value)));
    info.textContent = `p·η is zero at k = ${data.torsion_witness_k}; η ≠ 0 because ${data.nonvanishing}. Re-verified: ${data.reverified}.`;
    $("torsion-json").textContent = JSON.stringify(data.certificate, null, 2);
  });

  $("roots-go").click();
  $("census-go").click();
  $("torsion-go").click();
}

main();
