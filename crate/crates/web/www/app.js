// Expects the wasm-bindgen output (--target web) in ./pkg.
import init, { closed_sets, linear_extensions, unfold_tree } from "./pkg/nid_web.js";

const SVG = "http://www.w3.org/2000/svg";

function el(name, attrs, text) {
  const node = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

function call(id, f) {
  const out = JSON.parse(f());
  document.getElementById(`${id}-error`).textContent = out.error ?? "";
  return out.error ? null : out;
}

function drawHasse(svg, res) {
  svg.replaceChildren();
  const ranks = new Map();
  res.closed.forEach((set, i) => {
    const row = ranks.get(set.length) ?? [];
    row.push(i);
    ranks.set(set.length, row);
  });
  const levels = Math.max(...ranks.keys()) + 1;
  const width = +svg.getAttribute("width");
  const height = +svg.getAttribute("height");
  const pos = [];
  for (const [rank, row] of ranks) {
    row.forEach((i, k) => {
      pos[i] = [((k + 1) * width) / (row.length + 1), height - 30 - (rank * (height - 60)) / Math.max(levels - 1, 1)];
    });
  }
  for (const [a, b] of res.hasse) {
    svg.append(el("line", { x1: pos[a][0], y1: pos[a][1], x2: pos[b][0], y2: pos[b][1], stroke: "#888" }));
  }
  res.closed.forEach((set, i) => {
    svg.append(el("text", { x: pos[i][0], y: pos[i][1] + 4, "text-anchor": "middle", "font-size": 13 }, `{${set.join(",")}}`));
  });
}

function drawTree(svg, root) {
  svg.replaceChildren();
  const width = +svg.getAttribute("width");
  // leaves get consecutive slots, parents sit over their children
  const placed = [];
  let slot = 0;
  let depth = 0;
  function place(node, d, edge) {
    depth = Math.max(depth, d);
    const kids = Object.entries(node.children).map(([b, child]) => place(child, d + 1, b));
    const x = kids.length ? (kids[0].x + kids[kids.length - 1].x) / 2 : slot++;
    const p = { x, d, label: node.label, edge, kids };
    placed.push(p);
    return p;
  }
  place(root, 0, null);
  const dx = width / (slot + 1);
  const dy = Math.min(70, (+svg.getAttribute("height") - 40) / Math.max(depth, 1));
  const at = (p) => [(p.x + 1) * dx, 20 + p.d * dy];
  for (const p of placed) {
    for (const k of p.kids) {
      const [x1, y1] = at(p);
      const [x2, y2] = at(k);
      svg.append(el("line", { x1, y1, x2, y2, stroke: "#888" }));
      svg.append(el("text", { x: (x1 + x2) / 2 + 4, y: (y1 + y2) / 2, "font-size": 11, fill: "#36c" }, k.edge));
    }
  }
  for (const p of placed) {
    const [x, y] = at(p);
    svg.append(el("text", { x, y: y + 4, "text-anchor": "middle", "font-size": 13 }, p.label));
  }
}

await init();

document.getElementById("rules-run").onclick = () => {
  const res = call("rules", () => closed_sets(document.getElementById("rules").value));
  if (res) drawHasse(document.getElementById("rules-out"), res);
};

document.getElementById("poset-run").onclick = () => {
  const res = call("poset", () => linear_extensions(document.getElementById("poset").value));
  const list = document.getElementById("poset-out");
  list.replaceChildren();
  for (const seq of res?.extensions ?? []) {
    const item = document.createElement("li");
    item.textContent = seq.join(" < ");
    list.append(item);
  }
};

document.getElementById("coalg-run").onclick = () => {
  const res = call("coalg", () =>
    unfold_tree(
      document.getElementById("coalg").value,
      document.getElementById("coalg-state").value,
      +document.getElementById("coalg-depth").value,
    ),
  );
  if (res) drawTree(document.getElementById("coalg-out"), res);
};

for (const id of ["rules", "poset", "coalg"]) document.getElementById(`${id}-run`).click();
