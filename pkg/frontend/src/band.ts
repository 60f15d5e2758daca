// Band rendering: six nodes in three rows (one per braille cell row),
// left column dots 1-3, right column dots 4-6, matching the worn device.

const NODE_LAYOUT: Array<{ dot: number; row: number; column: "left" | "right" }> = [
  { dot: 1, row: 1, column: "left" },
  { dot: 2, row: 2, column: "left" },
  { dot: 3, row: 3, column: "left" },
  { dot: 4, row: 1, column: "right" },
  { dot: 5, row: 2, column: "right" },
  { dot: 6, row: 3, column: "right" },
];

export function bandHtml(): string {
  const rows = [1, 2, 3].map((row) => {
    const cells = NODE_LAYOUT.filter((n) => n.row === row)
      .sort((a) => (a.column === "left" ? -1 : 1))
      .map(
        (n) =>
          `<div class="band-node" data-node="${n.dot}" title="dot ${n.dot}">${n.dot}</div>`,
      )
      .join("");
    return `<div class="band-row">${cells}</div>`;
  });
  return `<div class="band">${rows.join("")}</div>`;
}

export function applyActiveNodes(root: ParentNode, active: Set<number>): void {
  root.querySelectorAll<HTMLElement>(".band-node").forEach((el) => {
    const node = Number(el.dataset.node);
    el.classList.toggle("active", active.has(node));
  });
}

export function setCursor(root: ParentNode, progress: number): void {
  const cursor = root.querySelector<HTMLElement>(".playback-cursor-fill");
  if (cursor) {
    cursor.style.width = `${Math.round(progress * 100)}%`;
  }
}
