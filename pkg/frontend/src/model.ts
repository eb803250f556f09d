// Pure view-model helpers: flattening the proof tree for display and
// enumerating subterm positions from the structural formula JSON.

import type {
	ApplicableJson,
	RuleJson,
	StructureNode,
	TreeJson,
	TreeNodeJson,
} from "./api.js";

export interface TreeRow {
	id: number;
	depth: number;
	goal: string;
	hypotheses: string[];
	pending: boolean;
	stale: boolean;
	label: string;
}

export function ruleLabel(rule: RuleJson | null): string {
	if (!rule) return "(pending)";
	const name = rule.rule ? `${rule.rule}` : rule.reasoner;
	const qualifier = rule.theory ? ` [${rule.theory}]` : "";
	return name + qualifier;
}

// Depth-first rows in application order, children under their parent.
export function treeRows(tree: TreeJson): TreeRow[] {
	const byId = new Map<number, TreeNodeJson>();
	for (const n of tree.nodes) byId.set(n.id, n);
	const rows: TreeRow[] = [];
	const walk = (id: number, depth: number) => {
		const n = byId.get(id);
		if (!n) return;
		rows.push({
			id: n.id,
			depth,
			goal: n.goal.text,
			hypotheses: n.hypotheses.map((h) => h.text),
			pending: n.rule === null,
			stale: n.stale,
			label: ruleLabel(n.rule),
		});
		for (const c of n.children) walk(c, depth + 1);
	};
	walk(tree.root, 0);
	return rows;
}

export function pendingIds(tree: TreeJson): number[] {
	return tree.nodes.filter((n) => n.rule === null).map((n) => n.id);
}

export function describeStructure(node: StructureNode): string {
	switch (node.kind) {
		case "ident":
			return node.name ?? "?";
		case "intlit":
			return String(node.value);
		case "ext":
			return node.name ?? "ext";
		case "forall":
		case "exists":
			return `${node.kind} ${(node.bound ?? []).join(", ")}`;
		default:
			return node.kind;
	}
}

export interface PositionEntry {
	path: number[];
	depth: number;
	label: string;
}

// Preorder enumeration: the same order the server scans for automatic
// rewrites, so the first hit in this list is what autoRewrite would pick.
export function positions(structure: StructureNode): PositionEntry[] {
	const out: PositionEntry[] = [];
	const walk = (node: StructureNode, path: number[], depth: number) => {
		out.push({ path, depth, label: describeStructure(node) });
		(node.children ?? []).forEach((c, i) =>
			walk(c, [...path, i], depth + 1),
		);
	};
	walk(structure, [], 0);
	return out;
}

export function structureAt(
	structure: StructureNode,
	path: number[],
): StructureNode | null {
	let node: StructureNode = structure;
	for (const i of path) {
		const next = (node.children ?? [])[i];
		if (!next) return null;
		node = next;
	}
	return node;
}

export function applicableLabel(a: ApplicableJson): string {
	const name = a.rule ?? a.reasoner;
	const parts: string[] = [];
	if (a.theory) parts.push(a.theory);
	const input = a.input as { position?: number[]; hyp?: number | null };
	if (Array.isArray(input.position)) {
		parts.push(`at ${input.position.length ? input.position.join(".") : "root"}`);
	}
	if (typeof input.hyp === "number") parts.push(`hyp ${input.hyp}`);
	return parts.length ? `${name} (${parts.join(", ")})` : name;
}

// Group the applicable list for the rule picker: structural steps first,
// then one group per theory, preserving server order inside each group.
export function groupApplicable(
	items: ApplicableJson[],
): { group: string; items: ApplicableJson[] }[] {
	const order: string[] = [];
	const grouped = new Map<string, ApplicableJson[]>();
	for (const a of items) {
		const key = a.theory ?? "structural";
		if (!grouped.has(key)) {
			grouped.set(key, []);
			order.push(key);
		}
		grouped.get(key)!.push(a);
	}
	order.sort((x, y) =>
		x === "structural" ? -1 : y === "structural" ? 1 : 0,
	);
	return order.map((group) => ({ group, items: grouped.get(group)! }));
}
