import init, { zeros, curve, pairFunctions } from "./pkg/zsl_web.js";

const $ = (id) => document.getElementById(id);

function show(outId, compute) {
  const out = $(outId);
  out.classList.remove("error");
  try {
    out.textContent = compute();
  } catch (e) {
    out.classList.add("error");
    out.textContent = String(e.message ?? e);
  }
}

function summarizeZeros(text) {
  const doc = JSON.parse(text);
  const lines = doc.zeros.map((z, k) => `${String(k + 1).padStart(3)}  ${z.gamma}`);
  return `${doc.zeros.length} zeros up to ${doc.t_max} (certified: ${doc.certified})\n\n${lines.join("\n")}`;
}

await init();
$("status").textContent = "Ready.";
for (const id of ["zeros-run", "curve-run", "pair-run"]) $(id).disabled = false;

$("zeros-run").addEventListener("click", () =>
  show("zeros-out", () => summarizeZeros(zeros(Number($("zeros-height").value)))));

$("curve-run").addEventListener("click", () =>
  show("curve-out", () => curve($("curve-desc").value)));

$("pair-run").addEventListener("click", () =>
  show("pair-out", () =>
    pairFunctions($("pair-form").value, $("pair-f").value, $("pair-g").value, Number($("pair-height").value))));
