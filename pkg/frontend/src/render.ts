/** DOM-free SVG text rendering of a view model. */

import { CELL, MARGIN, type ChartViewModel, type ViewDot } from "./viewmodel.js";

const R = 5;

function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function glyphSvg(d: ViewDot): string {
  const sel = d.selected ? ' stroke="orange" stroke-width="2"' : "";
  const title = `<title>${esc(`(${d.stem},${d.filtration}) ${d.title}`)}</title>`;
  switch (d.glyph) {
    case "box":
      return `<rect x="${d.x - R}" y="${d.y - R}" width="${2 * R}" height="${2 * R}" fill="none" stroke="black"${sel}>${title}</rect>`;
    case "circle":
      return `<circle cx="${d.x}" cy="${d.y}" r="${R}" fill="none" stroke="black"${sel}>${title}</circle>`;
    case "triangle_up":
      return `<path d="M ${d.x} ${d.y - R} L ${d.x - R} ${d.y + R} L ${d.x + R} ${d.y + R} Z" fill="black"${sel}>${title}</path>`;
    case "triangle_down":
      return `<path d="M ${d.x} ${d.y + R} L ${d.x - R} ${d.y - R} L ${d.x + R} ${d.y - R} Z" fill="black"${sel}>${title}</path>`;
    case "bar_bullet":
      return `<g${sel}><circle cx="${d.x}" cy="${d.y}" r="${R - 1}" fill="black"/><line x1="${d.x - R}" y1="${d.y - R}" x2="${d.x + R}" y2="${d.y - R}" stroke="black"/>${title}</g>`;
    case "hat_bullet":
      return `<g${sel}><circle cx="${d.x}" cy="${d.y}" r="${R - 1}" fill="black"/><path d="M ${d.x - R} ${d.y - R + 2} L ${d.x} ${d.y - R - 2} L ${d.x + R} ${d.y - R + 2}" fill="none" stroke="black"/>${title}</g>`;
    default:
      return `<circle cx="${d.x}" cy="${d.y}" r="${R - 1}" fill="black"${sel}>${title}</circle>`;
  }
}

export function renderSvg(vm: ChartViewModel): string {
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${vm.width}" height="${vm.height}" viewBox="0 0 ${vm.width} ${vm.height}">`,
    `<rect width="${vm.width}" height="${vm.height}" fill="white"/>`,
  ];
  for (const line of vm.lines) {
    const dash = line.style === "dashed" ? ' stroke-dasharray="5 3"' : "";
    parts.push(
      `<line x1="${line.x1}" y1="${line.y1}" x2="${line.x2}" y2="${line.y2}" stroke="${line.color}"${dash}><title>${esc(line.label)}</title></line>`,
    );
  }
  for (const d of vm.dots) {
    parts.push(glyphSvg(d));
  }
  vm.legend.forEach((glyph, i) => {
    parts.push(
      `<text x="${MARGIN + i * 4 * CELL}" y="${vm.height - 8}" font-size="11" font-family="sans-serif">${esc(glyph)}</text>`,
    );
  });
  if (vm.banner !== null) {
    parts.push(
      `<text x="${MARGIN}" y="${MARGIN / 2}" fill="crimson" font-size="12" font-family="sans-serif">${esc(vm.banner)}</text>`,
    );
  }
  parts.push(`<text x="8" y="16" font-size="12" font-family="sans-serif">page ${vm.page}</text>`);
  parts.push("</svg>");
  return parts.join("\n");
}
