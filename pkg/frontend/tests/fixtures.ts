// Canned API payloads shaped like the server's JSON, plus a tiny fake
// fetch that serves them with server-like semantics.

import type {
	ApplicableJson,
	FormulaJson,
	PoSummary,
	StructureNode,
	TreeJson,
} from "../src/api.js";

export function formula(text: string, structure: StructureNode): FormulaJson {
	return { text, ascii: text, structure };
}

export const GOAL_STRUCTURE: StructureNode = {
	kind: "equal",
	children: [
		{
			kind: "ext",
			name: "sum",
			children: [
				{
					kind: "ext",
					name: "rdiv",
					children: [
						{ kind: "ident", name: "a" },
						{ kind: "ident", name: "b" },
					],
				},
				{ kind: "ext", name: "zero", children: [] },
			],
		},
		{
			kind: "ext",
			name: "rdiv",
			children: [
				{ kind: "ident", name: "a" },
				{ kind: "ident", name: "b" },
			],
		},
	],
};

export const OPEN_TREE: TreeJson = {
	po: "real_sum_zero",
	status: "OPEN",
	root: 0,
	nodes: [
		{
			id: 0,
			hypotheses: [],
			goal: formula("rdiv(a, b) ⊕ zero = rdiv(a, b)", GOAL_STRUCTURE),
			rule: null,
			children: [],
			stale: false,
		},
	],
};

export const APPLIED_TREE: TreeJson = {
	po: "real_sum_zero",
	status: "OPEN",
	root: 0,
	nodes: [
		{
			id: 0,
			hypotheses: [],
			goal: formula("rdiv(a, b) ⊕ zero = rdiv(a, b)", GOAL_STRUCTURE),
			rule: {
				reasoner: "theory.manualRewrite",
				input: { rule: "sum_zero_rewrite", hyp: null, position: [0] },
				rule: "sum_zero_rewrite",
				theory: "RealTheory",
				wd_trivial: false,
			},
			children: [1, 2],
			stale: false,
		},
		{
			id: 1,
			hypotheses: [],
			goal: formula("b ≠ zero", {
				kind: "not",
				children: [{ kind: "equal", children: [] }],
			}),
			rule: null,
			children: [],
			stale: false,
		},
		{
			id: 2,
			hypotheses: [formula("h", { kind: "ident", name: "h" })],
			goal: formula("rdiv(a, b) = rdiv(a, b)", {
				kind: "equal",
				children: [],
			}),
			rule: null,
			children: [],
			stale: false,
		},
	],
};

export const APPLICABLE: ApplicableJson[] = [
	{
		reasoner: "theory.manualRewrite",
		input: { rule: "sum_zero_rewrite", hyp: null, position: [0] },
		rule: "sum_zero_rewrite",
		theory: "RealTheory",
	},
	{
		reasoner: "theory.expandDefinition",
		input: { hyp: null, position: [1] },
		rule: null,
		theory: "RealTheory",
	},
];

export const POS: PoSummary[] = [
	{
		id: "real_sum_zero",
		status: "OPEN",
		theories: ["RealTheory"],
		seq_file: "reals.seq",
	},
	{
		id: "list_nil_empty",
		status: "CLOSED",
		theories: ["ListTheory"],
		seq_file: "lists.seq",
	},
];

export interface FakeServer {
	fetch: typeof fetch;
	calls: { url: string; body: unknown }[];
	failNextApplyWith?: { status: number; detail: string };
}

export function fakeServer(): FakeServer {
	const server: FakeServer = { calls: [], fetch: undefined as never };
	let tree = OPEN_TREE;
	server.fetch = (async (input: RequestInfo | URL, init?: RequestInit) => {
		const url = String(input);
		const body = init?.body ? JSON.parse(String(init.body)) : undefined;
		server.calls.push({ url, body });
		const json = (status: number, payload: unknown) =>
			new Response(JSON.stringify(payload), {
				status,
				headers: { "Content-Type": "application/json" },
			});
		if (url.endsWith("/pos")) return json(200, POS);
		if (url.endsWith("/tree")) return json(200, tree);
		if (url.includes("/applicable")) return json(200, APPLICABLE);
		if (url.endsWith("/apply")) {
			if (server.failNextApplyWith) {
				const { status, detail } = server.failNextApplyWith;
				server.failNextApplyWith = undefined;
				return json(status, { detail });
			}
			tree = APPLIED_TREE;
			return json(200, tree);
		}
		if (url.endsWith("/auto")) {
			tree = APPLIED_TREE;
			return json(200, { tree, report: [] });
		}
		if (url.endsWith("/prune")) {
			tree = OPEN_TREE;
			return json(200, tree);
		}
		return json(404, { detail: `no route for ${url}` });
	}) as typeof fetch;
	return server;
}
