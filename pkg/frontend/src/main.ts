// Wiring: a thin state machine around the API client and the renderers.

import { ApiClient, ApiError } from "./api.js";
import type { ApplicableJson, TreeJson } from "./api.js";
import {
	renderError,
	renderPoList,
	renderPositionPicker,
	renderRulePicker,
	renderTree,
} from "./render.js";

interface State {
	selectedPo: string | null;
	selectedNode: number | null;
	selectedPosition: number[] | null;
	tree: TreeJson | null;
	applicable: ApplicableJson[] | null;
	error: string | null;
}

// Selecting a subterm narrows the rule picker to rules that act there.
export function filterByPosition(
	items: ApplicableJson[],
	position: number[] | null,
): ApplicableJson[] {
	if (position === null) return items;
	const key = position.join(".");
	return items.filter((a) => {
		const p = (a.input as { position?: number[] }).position;
		return !Array.isArray(p) || p.join(".") === key;
	});
}

export function startExplorer(root: HTMLElement, api = new ApiClient()) {
	const state: State = {
		selectedPo: null,
		selectedNode: null,
		selectedPosition: null,
		tree: null,
		applicable: null,
		error: null,
	};

	const sidebar = document.createElement("aside");
	const mainPane = document.createElement("main");
	const detailPane = document.createElement("section");
	detailPane.className = "detail-pane";
	root.append(sidebar, mainPane, detailPane);

	async function guard<T>(work: () => Promise<T>): Promise<T | undefined> {
		try {
			state.error = null;
			return await work();
		} catch (e) {
			state.error = e instanceof ApiError ? e.message : String(e);
			await draw();
			return undefined;
		}
	}

	async function selectPo(po: string) {
		state.selectedPo = po;
		state.selectedNode = null;
		state.applicable = null;
		await guard(async () => {
			state.tree = await api.tree(po);
			await draw();
		});
	}

	async function selectNode(node: number) {
		if (!state.selectedPo) return;
		state.selectedNode = node;
		state.selectedPosition = null;
		await guard(async () => {
			state.applicable = await api.applicable(state.selectedPo!, node);
			await draw();
		});
	}

	async function pickRule(a: ApplicableJson) {
		if (!state.selectedPo || state.selectedNode === null) return;
		await guard(async () => {
			state.tree = await api.apply(
				state.selectedPo!,
				state.selectedNode!,
				a.reasoner,
				a.input,
			);
			state.selectedNode = null;
			state.applicable = null;
			state.selectedPosition = null;
			await draw();
		});
	}

	async function runAuto() {
		if (!state.selectedPo) return;
		await guard(async () => {
			const out = await api.auto(state.selectedPo!);
			state.tree = out.tree;
			state.selectedNode = null;
			state.applicable = null;
			await draw();
		});
	}

	async function pruneSelected() {
		if (!state.selectedPo || state.selectedNode === null) return;
		await guard(async () => {
			state.tree = await api.prune(state.selectedPo!, state.selectedNode!);
			state.selectedNode = null;
			state.applicable = null;
			await draw();
		});
	}

	async function draw() {
		const pos = await api.listPos();
		sidebar.replaceChildren(renderPoList(pos, state.selectedPo, selectPo));

		mainPane.replaceChildren();
		if (state.error) mainPane.appendChild(renderError(state.error));
		if (state.tree) {
			const toolbar = document.createElement("div");
			toolbar.className = "toolbar";
			const autoButton = document.createElement("button");
			autoButton.className = "toolbar-auto";
			autoButton.textContent = "Auto";
			autoButton.addEventListener("click", runAuto);
			const pruneButton = document.createElement("button");
			pruneButton.className = "toolbar-prune";
			pruneButton.textContent = "Prune";
			pruneButton.disabled = state.selectedNode === null;
			pruneButton.addEventListener("click", pruneSelected);
			toolbar.append(autoButton, pruneButton);
			mainPane.appendChild(toolbar);
			mainPane.appendChild(
				renderTree(state.tree, state.selectedNode, selectNode),
			);
		}

		detailPane.replaceChildren();
		if (state.tree && state.selectedNode !== null && state.applicable) {
			detailPane.appendChild(
				renderRulePicker(
					filterByPosition(state.applicable, state.selectedPosition),
					pickRule,
				),
			);
			detailPane.appendChild(
				renderPositionPicker(state.tree, state.selectedNode, selectPosition),
			);
		}
	}

	async function selectPosition(path: number[]) {
		const same =
			state.selectedPosition !== null &&
			state.selectedPosition.join(".") === path.join(".");
		state.selectedPosition = same ? null : path;
		await draw();
	}

	void guard(draw);
	return { selectPo, selectNode, pickRule, runAuto, draw, state };
}

declare global {
	interface Window {
		__THEORIA_NO_AUTOSTART__?: boolean;
	}
}

if (typeof document !== "undefined" && !window.__THEORIA_NO_AUTOSTART__) {
	const root = document.getElementById("app");
	if (root) startExplorer(root);
}
