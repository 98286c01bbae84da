// Demo page logic: three panels over the wasm bindings, plain canvas 2D.

import init, {
  problems,
  direction,
  descend,
  pair_detail,
  family,
  holder_probe,
  criticality_grid,
} from './pkg/mosd_wasm.js';

const GRID_RES = 160;

// per-problem view windows chosen to show the interesting geometry
const VIEWS = {
  'paper-counterexample': { min: -2.5, max: 2.5 },
  'scalar-quadratic': { min: -5, max: 5 },
  'opposed-pair': { min: -5, max: 5 },
  'rosenbrock-pair': { min: -2, max: 2 },
};

function setupCanvas(canvas) {
  const dpr = window.devicePixelRatio || 1;
  const w = canvas.width;
  const h = canvas.height;
  canvas.style.width = `${w}px`;
  canvas.style.height = `${h}px`;
  canvas.width = Math.round(w * dpr);
  canvas.height = Math.round(h * dpr);
  const ctx = canvas.getContext('2d');
  ctx.scale(dpr, dpr);
  return { ctx, w, h };
}

function parse(json) {
  const value = JSON.parse(json);
  if (value && value.error) throw new Error(value.error);
  return value;
}

// dark navy -> blue -> cyan -> near-white
function colormap(t) {
  const stops = [
    [11, 14, 25],
    [38, 80, 150],
    [92, 200, 255],
    [235, 248, 255],
  ];
  const x = Math.min(Math.max(t, 0), 1) * (stops.length - 1);
  const i = Math.min(Math.floor(x), stops.length - 2);
  const f = x - i;
  const a = stops[i];
  const b = stops[i + 1];
  return [
    Math.round(a[0] + f * (b[0] - a[0])),
    Math.round(a[1] + f * (b[1] - a[1])),
    Math.round(a[2] + f * (b[2] - a[2])),
  ];
}

function fmt(x, digits = 4) {
  if (!Number.isFinite(x)) return String(x);
  const a = Math.abs(x);
  if (a !== 0 && (a < 1e-3 || a >= 1e4)) return x.toExponential(digits - 1);
  return x.toFixed(digits);
}

// ---------------------------------------------------------------- panel 1

function panelDescent(problemNames) {
  const select = document.getElementById('p1-problem');
  const epsSelect = document.getElementById('p1-eps');
  const readout = document.getElementById('p1-readout');
  const { ctx, w, h } = setupCanvas(document.getElementById('p1-canvas'));

  for (const name of problemNames) {
    const opt = document.createElement('option');
    opt.value = name;
    opt.textContent = name;
    select.appendChild(opt);
  }

  let view = VIEWS[select.value] ?? { min: -2, max: 2 };
  let heat = null; // offscreen canvas with the |lambda| field
  let path = null; // last descent trace
  let hover = null; // last hover direction

  const toPix = (p) => [
    ((p[0] - view.min) / (view.max - view.min)) * w,
    h - ((p[1] - view.min) / (view.max - view.min)) * h,
  ];
  const toWorld = (px, py) => [
    view.min + (px / w) * (view.max - view.min),
    view.min + ((h - py) / h) * (view.max - view.min),
  ];

  function renderHeatmap() {
    const grid = criticality_grid(select.value, view.min, view.max, view.min, view.max, GRID_RES);
    const off = document.createElement('canvas');
    off.width = GRID_RES;
    off.height = GRID_RES;
    const octx = off.getContext('2d');
    const img = octx.createImageData(GRID_RES, GRID_RES);
    let vmax = 0;
    for (const v of grid) if (Number.isFinite(v) && v > vmax) vmax = v;
    if (vmax === 0) vmax = 1;
    for (let i = 0; i < grid.length; i++) {
      const v = grid[i];
      const o = 4 * i;
      if (Number.isFinite(v)) {
        const [r, g, b] = colormap(Math.sqrt(v / vmax));
        img.data[o] = r;
        img.data[o + 1] = g;
        img.data[o + 2] = b;
        img.data[o + 3] = 255;
      } else {
        img.data[o + 3] = 0; // outside the domain
      }
    }
    octx.putImageData(img, 0, 0);
    heat = off;
  }

  function drawArrow(from, dir, scale, color) {
    const norm = Math.hypot(dir[0], dir[1]);
    if (norm === 0) return;
    const len = scale * Math.min(1, norm);
    const tip = [from[0] + (dir[0] / norm) * len, from[1] + (dir[1] / norm) * len];
    const a = toPix(from);
    const b = toPix(tip);
    ctx.strokeStyle = color;
    ctx.fillStyle = color;
    ctx.lineWidth = 1.6;
    ctx.beginPath();
    ctx.moveTo(a[0], a[1]);
    ctx.lineTo(b[0], b[1]);
    ctx.stroke();
    const ang = Math.atan2(b[1] - a[1], b[0] - a[0]);
    ctx.beginPath();
    ctx.moveTo(b[0], b[1]);
    ctx.lineTo(b[0] - 7 * Math.cos(ang - 0.4), b[1] - 7 * Math.sin(ang - 0.4));
    ctx.lineTo(b[0] - 7 * Math.cos(ang + 0.4), b[1] - 7 * Math.sin(ang + 0.4));
    ctx.closePath();
    ctx.fill();
  }

  function redraw() {
    ctx.clearRect(0, 0, w, h);
    if (heat) {
      ctx.imageSmoothingEnabled = true;
      ctx.drawImage(heat, 0, 0, w, h);
    }
    if (path) {
      ctx.strokeStyle = '#ffd166';
      ctx.lineWidth = 1.8;
      ctx.beginPath();
      path.forEach((p, i) => {
        const q = toPix(p.x);
        if (i === 0) ctx.moveTo(q[0], q[1]);
        else ctx.lineTo(q[0], q[1]);
      });
      ctx.stroke();
      const start = toPix(path[0].x);
      const end = toPix(path[path.length - 1].x);
      ctx.fillStyle = '#ffd166';
      ctx.beginPath();
      ctx.arc(start[0], start[1], 3.5, 0, 7);
      ctx.fill();
      ctx.fillStyle = '#ff7a76';
      ctx.beginPath();
      ctx.arc(end[0], end[1], 4, 0, 7);
      ctx.fill();
    }
    if (hover) drawArrow(hover.at, hover.lambda, 0.22 * (view.max - view.min), '#6fd98a');
  }

  function refresh() {
    view = VIEWS[select.value] ?? { min: -2, max: 2 };
    path = null;
    hover = null;
    renderHeatmap();
    redraw();
    readout.textContent = 'click anywhere to descend';
  }

  select.addEventListener('change', refresh);

  const canvas = document.getElementById('p1-canvas');
  canvas.addEventListener('mousemove', (ev) => {
    const rect = canvas.getBoundingClientRect();
    const at = toWorld(ev.clientX - rect.left, ev.clientY - rect.top);
    try {
      const r = parse(direction(select.value, new Float64Array(at)));
      hover = { at, lambda: r.lambda };
    } catch {
      hover = null;
    }
    redraw();
  });
  canvas.addEventListener('mouseleave', () => {
    hover = null;
    redraw();
  });
  canvas.addEventListener('click', (ev) => {
    const rect = canvas.getBoundingClientRect();
    const at = toWorld(ev.clientX - rect.left, ev.clientY - rect.top);
    try {
      const eps = Number(epsSelect.value);
      const trace = parse(descend(select.value, new Float64Array(at), eps, 10000));
      path = trace.iterates;
      const last = path[path.length - 1];
      readout.innerHTML =
        `<span class="k">status</span> ${trace.status}   ` +
        `<span class="k">iterates</span> ${path.length}\n` +
        `<span class="k">final x</span> (${fmt(last.x[0])}, ${fmt(last.x[1])})   ` +
        `<span class="k">|&Lambda;|</span> ${fmt(last.lambda_norm, 3)}\n` +
        `<span class="k">f</span> (${last.f.map((v) => fmt(v)).join(', ')})`;
    } catch (e) {
      path = null;
      readout.textContent = `error: ${e.message}`;
    }
    redraw();
  });

  refresh();
}

// ---------------------------------------------------------------- panel 2

function panelFamily() {
  const slider = document.getElementById('p2-slider');
  const tLabel = document.getElementById('p2-t');
  const readout = document.getElementById('p2-readout');
  const geo = setupCanvas(document.getElementById('p2-geometry'));
  const log = setupCanvas(document.getElementById('p2-loglog'));

  const fam = parse(family(1e-4, 1.0, 44));

  const T_LO = Math.log10(1e-4);
  const T_HI = Math.log10(1.5);
  const sliderT = () => Math.pow(10, T_LO + (slider.value / 1000) * (T_HI - T_LO));

  // world window for the geometry sketch
  const W = { x0: -1.35, x1: 1.5, y0: -0.55, y1: 1.25 };
  const gp = (p) => [
    ((p[0] - W.x0) / (W.x1 - W.x0)) * geo.w,
    geo.h - ((p[1] - W.y0) / (W.y1 - W.y0)) * geo.h,
  ];

  function drawGeometry(d) {
    const { ctx } = geo;
    ctx.clearRect(0, 0, geo.w, geo.h);
    // axes
    ctx.strokeStyle = '#232c3a';
    ctx.lineWidth = 1;
    ctx.beginPath();
    ctx.moveTo(...gp([W.x0, 0]));
    ctx.lineTo(...gp([W.x1, 0]));
    ctx.moveTo(...gp([0, W.y0]));
    ctx.lineTo(...gp([0, W.y1]));
    ctx.stroke();
    // unit circle and the cos-t circle carrying y_t (window is not
    // square, so radii scale per axis)
    const sx = geo.w / (W.x1 - W.x0);
    const sy = geo.h / (W.y1 - W.y0);
    for (const r of [1, Math.cos(d.t)]) {
      ctx.strokeStyle = '#2a3342';
      ctx.beginPath();
      const c = gp([0, 0]);
      ctx.ellipse(c[0], c[1], r * sx, r * sy, 0, 0, 7);
      ctx.stroke();
    }
    const arrow = (from, dir, color) => {
      const a = gp(from);
      const b = gp([from[0] + 0.38 * dir[0], from[1] + 0.38 * dir[1]]);
      ctx.strokeStyle = color;
      ctx.fillStyle = color;
      ctx.lineWidth = 1.6;
      ctx.beginPath();
      ctx.moveTo(a[0], a[1]);
      ctx.lineTo(b[0], b[1]);
      ctx.stroke();
      const ang = Math.atan2(b[1] - a[1], b[0] - a[0]);
      ctx.beginPath();
      ctx.moveTo(b[0], b[1]);
      ctx.lineTo(b[0] - 6 * Math.cos(ang - 0.4), b[1] - 6 * Math.sin(ang - 0.4));
      ctx.lineTo(b[0] - 6 * Math.cos(ang + 0.4), b[1] - 6 * Math.sin(ang + 0.4));
      ctx.closePath();
      ctx.fill();
    };
    // the pair and its directions
    const dot = (p, color) => {
      const q = gp(p);
      ctx.fillStyle = color;
      ctx.beginPath();
      ctx.arc(q[0], q[1], 3.5, 0, 7);
      ctx.fill();
    };
    ctx.setLineDash([4, 3]);
    ctx.strokeStyle = '#8292a8';
    ctx.beginPath();
    ctx.moveTo(...gp(d.y));
    ctx.lineTo(...gp(d.z));
    ctx.stroke();
    ctx.setLineDash([]);
    arrow(d.y, d.lambda_y, '#5cc8ff');
    arrow(d.z, d.lambda_z, '#ffd166');
    dot(d.y, '#5cc8ff');
    dot(d.z, '#ffd166');
    ctx.fillStyle = '#8292a8';
    ctx.font = '11px ui-monospace, monospace';
    const yq = gp(d.y);
    const zq = gp(d.z);
    ctx.fillText('y', yq[0] - 12, yq[1] - 6);
    ctx.fillText('z', zq[0] + 8, zq[1] - 6);
  }

  function drawLogLog(d) {
    const { ctx } = log;
    ctx.clearRect(0, 0, log.w, log.h);
    const X0 = -8.3;
    const X1 = 0.4; // log10 dist
    const Y0 = -4.3;
    const Y1 = 0.4; // log10 dlambda
    const px = (x, y) => [
      ((x - X0) / (X1 - X0)) * log.w,
      log.h - ((y - Y0) / (Y1 - Y0)) * log.h,
    ];
    ctx.strokeStyle = '#232c3a';
    ctx.fillStyle = '#5a6880';
    ctx.font = '10px ui-monospace, monospace';
    for (let dec = -8; dec <= 0; dec += 2) {
      const [x] = px(dec, 0);
      ctx.beginPath();
      ctx.moveTo(x, 0);
      ctx.lineTo(x, log.h);
      ctx.stroke();
      ctx.fillText(`1e${dec}`, x + 2, log.h - 4);
    }
    for (let dec = -4; dec <= 0; dec += 1) {
      const [, y] = px(0, dec);
      ctx.beginPath();
      ctx.moveTo(0, y);
      ctx.lineTo(log.w, y);
      ctx.stroke();
      ctx.fillText(`1e${dec}`, 3, y - 3);
    }
    // slope-1 reference (what Lipschitz continuity would need)
    ctx.strokeStyle = '#47546b';
    ctx.setLineDash([3, 4]);
    ctx.beginPath();
    ctx.moveTo(...px(-4.3, -4.3));
    ctx.lineTo(...px(0.3, 0.3));
    ctx.stroke();
    ctx.setLineDash([]);
    ctx.fillText('slope 1', ...px(-1.6, -1.1));
    // the family: an exact line of slope 1/2
    ctx.strokeStyle = '#5cc8ff';
    ctx.lineWidth = 1.8;
    ctx.beginPath();
    fam.rows.forEach((r, i) => {
      const q = px(Math.log10(r.dist), Math.log10(r.dlambda));
      if (i === 0) ctx.moveTo(q[0], q[1]);
      else ctx.lineTo(q[0], q[1]);
    });
    ctx.stroke();
    ctx.fillStyle = '#dbe4f0';
    ctx.fillText(`family: fitted slope ${fam.fit ? fam.fit.slope.toFixed(6) : '?'}`, 8, 12);
    // current t marker
    const q = px(Math.log10(d.dist), Math.log10(d.dlambda));
    ctx.fillStyle = '#ffd166';
    ctx.beginPath();
    ctx.arc(q[0], q[1], 4, 0, 7);
    ctx.fill();
  }

  function refresh() {
    const t = Math.min(sliderT(), 1.5);
    const d = parse(pair_detail(t));
    tLabel.textContent = `t = ${fmt(t, 4)}`;
    drawGeometry(d);
    drawLogLog(d);
    readout.innerHTML =
      `<span class="k">|y−z|</span> ${fmt(d.dist)} = sin²t   ` +
      `<span class="k">|Λ(y)−Λ(z)|</span> ${fmt(d.dlambda)} = sin t\n` +
      `<span class="k">quotients</span> η=½: ${fmt(d.q_half, 6)}   ` +
      `η=¾: ${fmt(d.q_075, 4)}   η=1: ${fmt(d.q_1, 4)}`;
  }

  slider.addEventListener('input', refresh);
  refresh();
}

// ---------------------------------------------------------------- panel 3

function panelProbe(problemNames) {
  const select = document.getElementById('p3-problem');
  const radius = document.getElementById('p3-radius');
  const pairs = document.getElementById('p3-pairs');
  const seed = document.getElementById('p3-seed');
  const button = document.getElementById('p3-run');
  const readout = document.getElementById('p3-readout');
  const { ctx, w, h } = setupCanvas(document.getElementById('p3-canvas'));

  for (const name of problemNames) {
    const opt = document.createElement('option');
    opt.value = name;
    opt.textContent = name;
    select.appendChild(opt);
  }

  const SCALES = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6];

  function run() {
    let report;
    try {
      report = parse(
        holder_probe(
          select.value,
          0,
          0,
          Number(radius.value),
          new Float64Array(SCALES),
          Number(pairs.value),
          Number(seed.value),
        ),
      );
    } catch (e) {
      readout.textContent = `error: ${e.message}`;
      ctx.clearRect(0, 0, w, h);
      return;
    }
    const s = report.summary;
    const ymax = Math.max(s.bound * 1.15, s.max_q_half * 1.1, 1e-9);
    const X0 = Math.log10(Math.min(...SCALES)) - 0.4;
    const X1 = Math.log10(Math.max(...SCALES)) + 0.4;
    const px = (d, q) => [
      ((Math.log10(d) - X0) / (X1 - X0)) * w,
      h - (q / ymax) * (h - 18) - 4,
    ];

    ctx.clearRect(0, 0, w, h);
    ctx.font = '10px ui-monospace, monospace';
    ctx.fillStyle = '#5a6880';
    ctx.strokeStyle = '#232c3a';
    for (const sc of SCALES) {
      const [x] = px(sc, 0);
      ctx.beginPath();
      ctx.moveTo(x, 0);
      ctx.lineTo(x, h);
      ctx.stroke();
      ctx.fillText(`|Δx|=${sc.toExponential(0)}`, x - 24, h - 4);
    }
    // samples
    ctx.fillStyle = 'rgba(92, 200, 255, 0.45)';
    for (const p of report.points) {
      const [x, y] = px(p.dist, p.q_half);
      ctx.fillRect(x - 1.2, y - 1.2, 2.4, 2.4);
    }
    // the bound
    const [, by] = px(SCALES[0], s.bound);
    ctx.strokeStyle = '#ff7a76';
    ctx.lineWidth = 1.5;
    ctx.setLineDash([6, 4]);
    ctx.beginPath();
    ctx.moveTo(0, by);
    ctx.lineTo(w, by);
    ctx.stroke();
    ctx.setLineDash([]);
    ctx.fillStyle = '#ff7a76';
    ctx.fillText(`√(2LM) = ${fmt(s.bound, 4)}`, 6, Math.max(10, by - 5));

    const verdict = s.bound_holds
      ? '<span class="pass">bound holds</span>'
      : '<span class="fail">BOUND VIOLATED</span>';
    readout.innerHTML =
      `<span class="k">L</span> ${fmt(s.L, 4)}  <span class="k">M</span> ${fmt(s.M, 4)}  ` +
      `<span class="k">√(2LM)</span> ${fmt(s.bound, 4)}  ` +
      `<span class="k">max q½</span> ${fmt(s.max_q_half, 4)}  ${verdict}\n` +
      `<span class="k">fit slope</span> ${s.fit ? fmt(s.fit.slope, 4) : 'n/a'}  ` +
      `<span class="k">zero-ΔΛ pairs</span> ${s.zero_dlambda}  ` +
      `<span class="k">seed</span> ${s.seed}`;
  }

  button.addEventListener('click', run);
}

// ------------------------------------------------------------------ boot

async function boot() {
  try {
    await init();
  } catch (e) {
    document.getElementById('boot-error').style.display = 'block';
    throw e;
  }
  const names = parse(problems()).map((p) => p.name);
  panelDescent(names);
  panelFamily();
  panelProbe(names);
}

boot();
