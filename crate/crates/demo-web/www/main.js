import init, { ykc_explore, g1_subdivision, phi_image } from "./pkg/hankel_demo_web.js";

const $ = (id) => document.getElementById(id);

function heat(t) {
  const h = 240 - 240 * t;
  return `hsl(${h}, 80%, 55%)`;
}

function drawYkc() {
  let r;
  try {
    r = JSON.parse(ykc_explore($("ya").value, $("yb").value, $("yc").value, 96));
  } catch (e) {
    $("yout").textContent = String(e);
    return;
  }
  const cv = $("ycanvas");
  const ctx = cv.getContext("2d");
  ctx.clearRect(0, 0, cv.width, cv.height);
  const vals = r.field.filter((v) => v !== null);
  const lo = Math.min(...vals);
  const hi = Math.max(...vals);
  const cell = cv.width / r.pixels;
  r.field.forEach((v, k) => {
    if (v === null) return;
    ctx.fillStyle = heat(hi > lo ? (v - lo) / (hi - lo) : 0);
    ctx.fillRect((k % r.pixels) * cell, Math.floor(k / r.pixels) * cell, cell + 0.5, cell + 0.5);
  });
  if (r.argmax) {
    const [x, y] = r.argmax;
    ctx.strokeStyle = "#000";
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.arc((x + 1) / 2 * cv.width, (1 - y) / 2 * cv.height, 6, 0, 2 * Math.PI);
    ctx.stroke();
  }
  $("yout").textContent = [
    `branch     ${r.branch}`,
    `closed     ${r.exact ?? r.closed}`,
    `           ${r.closed}`,
    `oracle     ${r.oracle}`,
    `deviation  ${r.deviation.toExponential(2)}`,
  ].join("\n");
}

const fraction = (s) => {
  const [n, d = "1"] = s.split("/");
  return Number(n) / Number(d);
};

function drawG1() {
  let r;
  try {
    r = JSON.parse(g1_subdivision($("gstrat").value, Number($("gdepth").value), $("gcorner").checked));
  } catch (e) {
    $("gout").textContent = String(e);
    return;
  }
  const cv = $("gcanvas");
  const ctx = cv.getContext("2d");
  ctx.clearRect(0, 0, cv.width, cv.height);
  const colors = {
    "certified-by-bernstein": "#7fcf7f",
    "certified-by-corner": "#7fa8e0",
    "failed": "#e07f7f",
  };
  const visit = (node) => {
    if (node.children.length) return node.children.forEach(visit);
    const [a, b, c, d] = node.rect.map(fraction);
    const x = a * cv.width, w = (b - a) * cv.width;
    const y = (1 - d) * cv.height, h = (d - c) * cv.height;
    ctx.fillStyle = colors[node.status] ?? "#ddd";
    ctx.fillRect(x, y, w, h);
    ctx.strokeStyle = "#333";
    ctx.strokeRect(x, y, w, h);
  };
  visit(r.tree);
  $("gout").textContent = [
    `verdict  ${r.verdict}`,
    `nodes    ${r.nodes}`,
    `leaves   ${JSON.stringify(r.leaves)}`,
    "",
    "p runs left to right, x bottom to top",
  ].join("\n");
}

function drawPhi() {
  const r = JSON.parse(phi_image(Number($("prings").value), Number($("pspokes").value), 256));
  const cv = $("pcanvas");
  const ctx = cv.getContext("2d");
  ctx.clearRect(0, 0, cv.width, cv.height);
  // Real axis spans [-0.5, 2.5], centred vertically.
  const scale = cv.width / 3;
  const px = (x) => (x + 0.5) * scale;
  const py = (y) => cv.height / 2 - y * scale;
  const path = (pts, color) => {
    ctx.strokeStyle = color;
    ctx.beginPath();
    pts.forEach(([x, y], k) => (k ? ctx.lineTo(px(x), py(y)) : ctx.moveTo(px(x), py(y))));
    ctx.stroke();
  };
  ctx.strokeStyle = "#bbb";
  ctx.setLineDash([4, 4]);
  for (const rad of [0.25, 2.25]) {
    ctx.beginPath();
    ctx.arc(px(0), py(0), rad * scale, 0, 2 * Math.PI);
    ctx.stroke();
  }
  ctx.beginPath();
  ctx.moveTo(px(0.25), 0);
  ctx.lineTo(px(0.25), cv.height);
  ctx.stroke();
  ctx.setLineDash([]);
  r.rays.forEach((c) => path(c, "#c77"));
  r.circles.forEach((c) => path(c, "#36c"));
}

await init();
$("ygo").onclick = drawYkc;
$("ggo").onclick = drawG1;
$("pgo").onclick = drawPhi;
drawYkc();
drawG1();
drawPhi();
