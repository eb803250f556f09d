// DOM construction for the explorer.  Render functions are passed
// callbacks instead of reaching for global state, so they test cleanly
// under a headless DOM.

import type { ApplicableJson, PoSummary, TreeJson } from "./api.js";
import {
	applicableLabel,
	groupApplicable,
	positions,
	treeRows,
} from "./model.js";

function el<K extends keyof HTMLElementTagNameMap>(
	tag: K,
	klass?: string,
	text?: string,
): HTMLElementTagNameMap[K] {
	const node = document.createElement(tag);
	if (klass) node.className = klass;
	if (text !== undefined) node.textContent = text;
	return node;
}

export function renderPoList(
	pos: PoSummary[],
	selected: string | null,
	onSelect: (po: string) => void,
): HTMLElement {
	const list = el("ul", "po-list");
	for (const po of pos) {
		const item = el("li", `po-item status-${po.status.toLowerCase()}`);
		if (po.id === selected) item.classList.add("selected");
		const button = el("button", "po-button", po.id);
		button.addEventListener("click", () => onSelect(po.id));
		item.appendChild(button);
		item.appendChild(el("span", "po-status", po.status));
		list.appendChild(item);
	}
	return list;
}

export function renderTree(
	tree: TreeJson,
	selectedNode: number | null,
	onSelect: (node: number) => void,
): HTMLElement {
	const container = el("div", "proof-tree");
	const heading = el("div", `tree-status status-${tree.status.toLowerCase()}`);
	heading.appendChild(el("span", "tree-po", tree.po));
	heading.appendChild(el("span", "tree-state", tree.status));
	container.appendChild(heading);
	for (const row of treeRows(tree)) {
		const div = el("div", "tree-node");
		div.style.marginLeft = `${row.depth * 1.5}em`;
		div.dataset.nodeId = String(row.id);
		if (row.pending) div.classList.add("pending");
		if (row.stale) div.classList.add("stale");
		if (row.id === selectedNode) div.classList.add("selected");
		for (const h of row.hypotheses) {
			div.appendChild(el("div", "node-hyp", h));
		}
		div.appendChild(el("div", "node-goal", `⊢ ${row.goal}`));
		div.appendChild(el("div", "node-rule", row.label));
		div.addEventListener("click", () => onSelect(row.id));
		container.appendChild(div);
	}
	return container;
}

export function renderRulePicker(
	items: ApplicableJson[],
	onPick: (a: ApplicableJson) => void,
): HTMLElement {
	const container = el("div", "rule-picker");
	if (items.length === 0) {
		container.appendChild(el("p", "picker-empty", "No applicable rules."));
		return container;
	}
	for (const { group, items: grouped } of groupApplicable(items)) {
		container.appendChild(el("h3", "picker-group", group));
		for (const a of grouped) {
			const button = el("button", "picker-rule", applicableLabel(a));
			button.addEventListener("click", () => onPick(a));
			container.appendChild(button);
		}
	}
	return container;
}

// The position picker walks the structural JSON of the goal; the chosen
// path is reported verbatim so the server does all the interpretation.
export function renderPositionPicker(
	tree: TreeJson,
	nodeId: number,
	onPick: (path: number[]) => void,
): HTMLElement {
	const container = el("div", "position-picker");
	const node = tree.nodes.find((n) => n.id === nodeId);
	if (!node) return container;
	for (const entry of positions(node.goal.structure)) {
		const button = el("button", "picker-position", entry.label);
		button.style.marginLeft = `${entry.depth}em`;
		button.dataset.path = entry.path.join(".");
		button.addEventListener("click", () => onPick(entry.path));
		container.appendChild(button);
	}
	return container;
}

export function renderError(message: string): HTMLElement {
	return el("div", "error-banner", message);
}
