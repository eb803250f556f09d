// Typed client for the theoria proof service.  All proof logic stays on
// the server; this module only moves JSON back and forth.

export interface StructureNode {
	kind: string;
	children?: StructureNode[];
	name?: string;
	value?: number;
	bound?: string[];
}

export interface FormulaJson {
	text: string;
	ascii: string;
	structure: StructureNode;
}

export interface RuleJson {
	reasoner: string;
	input: Record<string, unknown>;
	rule: string | null;
	theory: string | null;
	wd_trivial?: boolean;
}

export interface TreeNodeJson {
	id: number;
	hypotheses: FormulaJson[];
	goal: FormulaJson;
	rule: RuleJson | null;
	children: number[];
	stale: boolean;
}

export interface TreeJson {
	po: string;
	status: string;
	root: number;
	nodes: TreeNodeJson[];
}

export interface PoSummary {
	id: string;
	status: string;
	theories: string[];
	seq_file: string;
}

export interface ApplicableJson {
	reasoner: string;
	input: Record<string, unknown>;
	rule: string | null;
	theory: string | null;
}

export interface AutoResponse {
	tree: TreeJson;
	report: { tactic: string; steps: unknown[] }[];
}

export interface ReplayResult {
	po: string;
	verdict: string;
	detail: string | null;
	status: string;
}

export class ApiError extends Error {
	status: number;

	constructor(status: number, message: string) {
		super(message);
		this.status = status;
	}
}

type Fetch = typeof fetch;

export class ApiClient {
	private base: string;
	private fetchImpl: Fetch;

	constructor(base = "", fetchImpl: Fetch = fetch) {
		this.base = base.replace(/\/$/, "");
		this.fetchImpl = fetchImpl;
	}

	private async request<T>(path: string, init?: RequestInit): Promise<T> {
		const res = await this.fetchImpl(this.base + path, init);
		if (!res.ok) {
			let detail = res.statusText;
			try {
				const body = await res.json();
				if (body && typeof body.detail === "string") detail = body.detail;
			} catch {
				// keep the status text
			}
			throw new ApiError(res.status, detail);
		}
		return res.json() as Promise<T>;
	}

	private post<T>(path: string, body: unknown): Promise<T> {
		return this.request<T>(path, {
			method: "POST",
			headers: { "Content-Type": "application/json" },
			body: JSON.stringify(body),
		});
	}

	listPos(): Promise<PoSummary[]> {
		return this.request("/pos");
	}

	tree(po: string): Promise<TreeJson> {
		return this.request(`/pos/${encodeURIComponent(po)}/tree`);
	}

	applicable(po: string, node: number): Promise<ApplicableJson[]> {
		return this.request(
			`/pos/${encodeURIComponent(po)}/nodes/${node}/applicable`,
		);
	}

	apply(
		po: string,
		node: number,
		reasoner: string,
		input: Record<string, unknown>,
	): Promise<TreeJson> {
		return this.post(`/pos/${encodeURIComponent(po)}/apply`, {
			node,
			reasoner,
			input,
		});
	}

	auto(po: string, tactic = "ALL"): Promise<AutoResponse> {
		return this.post(`/pos/${encodeURIComponent(po)}/auto`, { tactic });
	}

	prune(po: string, node: number): Promise<TreeJson> {
		return this.post(`/pos/${encodeURIComponent(po)}/prune`, { node });
	}

	replay(po?: string): Promise<ReplayResult[]> {
		return this.post("/replay", po === undefined ? {} : { po });
	}
}
