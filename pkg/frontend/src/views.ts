// Pure view functions: state in, HTML string out. Every displayed number
// comes verbatim from an API response field; nothing is computed here.

import type { ChatPayload, ChatSummary, Receipt, UrlEntry } from "./api.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

export function userLabel(alias: number): string {
  return `User${alias}`;
}

function badge(text: string, kind: string): string {
  return `<span class="badge badge-${kind}">${escapeHtml(text)}</span>`;
}

export function stateBadge(state: string): string {
  return badge(state, state);
}

export function editedBadge(edited: boolean): string {
  return edited ? badge("edited", "edited") : "";
}

export function errorBanner(message: string, retryAction?: string): string {
  const retry = retryAction
    ? ` <button data-action="${retryAction}">retry</button>`
    : "";
  return `<div class="banner error">${escapeHtml(message)}${retry}</div>`;
}

export function noticeBanner(message: string): string {
  return `<div class="banner notice">${escapeHtml(message)}</div>`;
}

export function emptyStateView(): string {
  return `
  <div class="empty">
    <h2>No chats yet</h2>
    <p>Export a chat from your messenger as a text file, then add it here.
       Parsing happens on this machine; nothing is sent anywhere until you
       review and approve it.</p>
    <label class="import">Add an exported chat file
      <input type="file" accept=".txt,text/plain" data-action="import-file">
    </label>
  </div>`;
}

export function chatListView(chats: ChatSummary[]): string {
  if (chats.length === 0) {
    return emptyStateView();
  }
  const rows = chats
    .map(
      (chat) => `
    <tr>
      <td><a href="#" data-action="open" data-id="${escapeHtml(chat.chat_id)}">Chat ${escapeHtml(chat.chat_label)}</a></td>
      <td>${chat.num_users}</td>
      <td>${chat.total_messages}</td>
      <td>${chat.url_count}</td>
      <td>${escapeHtml(chat.start_date)} to ${escapeHtml(chat.end_date)}</td>
      <td>${stateBadge(chat.state)} ${editedBadge(chat.edited)}</td>
    </tr>`,
    )
    .join("");
  return `
  <table class="chats">
    <thead><tr><th>chat</th><th>users</th><th>messages</th><th>urls</th><th>dates</th><th>status</th></tr></thead>
    <tbody>${rows}</tbody>
  </table>
  <label class="import">Add another exported chat file
    <input type="file" accept=".txt,text/plain" data-action="import-file">
  </label>`;
}

export function urlRowView(
  url: UrlEntry,
  index: number,
  pendingDelete: number | null,
  locked: boolean,
): string {
  const cc = url.cc_tld ? ` <span class="cc">${escapeHtml(url.cc_tld)}</span>` : "";
  const shortened = url.was_shortened ? ' <span class="cc">shortened</span>' : "";
  let action: string;
  if (locked) {
    action = "";
  } else if (pendingDelete === index) {
    action = `
      <button class="confirm" data-action="confirm-delete" data-index="${index}">confirm delete</button>
      <button data-action="cancel-delete">keep</button>`;
  } else {
    action = `<button class="x" title="delete this URL" data-action="request-delete" data-index="${index}">&#10005;</button>`;
  }
  return `
    <li>
      <code>${escapeHtml(url.domain)}</code>${cc}${shortened}
      <span class="meta">${userLabel(url.alias)}, ${escapeHtml(url.date)}</span>
      ${action}
    </li>`;
}

export function chatDetailView(
  payload: ChatPayload,
  pendingDelete: number | null,
): string {
  const locked = false;
  const perUser = payload.per_user
    .map(
      (stats) => `
    <tr>
      <td>${userLabel(stats.alias)}</td>
      <td>${stats.total_messages}</td>
      <td>${stats.url_messages}</td>
      <td>${stats.text_messages}</td>
    </tr>`,
    )
    .join("");
  const urls = payload.urls.length
    ? `<ol class="urls">${payload.urls
        .map((url, index) => urlRowView(url, index, pendingDelete, locked))
        .join("")}</ol>`
    : "<p>No URLs in this chat.</p>";
  return `
  <p><a href="#" data-action="back">&larr; all chats</a></p>
  <h2>Chat ${escapeHtml(payload.chat_label)} ${editedBadge(payload.edited)}</h2>
  <p>${payload.num_users} users, ${escapeHtml(payload.start_date)} to ${escapeHtml(payload.end_date)}</p>
  <table class="per-user">
    <thead><tr><th>user</th><th>messages</th><th>url</th><th>text</th></tr></thead>
    <tbody>${perUser}</tbody>
  </table>
  <h3>Shared URLs</h3>
  ${urls}
  <p>
    <button data-action="open-preview" data-id="${escapeHtml(payload.chat_id)}">
      preview &amp; send
    </button>
  </p>`;
}

export function previewView(
  chatId: string,
  previewText: string,
  researcherChecked: boolean,
  canSubmit: boolean,
  receipt: Receipt | null,
): string {
  if (receipt) {
    return receiptView(receipt);
  }
  let pretty: string;
  try {
    pretty = JSON.stringify(JSON.parse(previewText), null, 2);
  } catch {
    pretty = "(preview is not valid JSON)";
  }
  return `
  <p><a href="#" data-action="back">&larr; all chats</a></p>
  <h2>Exactly what will be sent</h2>
  <div class="panes">
    <div><h3>raw payload bytes</h3><pre class="raw">${escapeHtml(previewText)}</pre></div>
    <div><h3>pretty-printed</h3><pre>${escapeHtml(pretty)}</pre></div>
  </div>
  <label class="consent">
    <input type="checkbox" data-action="toggle-researcher"
      ${researcherChecked ? "checked" : ""}>
    send to the research team
  </label>
  <button data-action="submit" data-id="${escapeHtml(chatId)}"
    ${canSubmit ? "" : "disabled"}>send</button>`;
}

export function receiptView(receipt: Receipt): string {
  const targets = receipt.targets
    .map((target) => `<li><code>${escapeHtml(target)}</code></li>`)
    .join("");
  return `
  <p><a href="#" data-action="back">&larr; all chats</a></p>
  <h2>Sent</h2>
  <p>Chat payload delivered to:</p>
  <ul>${targets}</ul>
  <p class="meta">at ${escapeHtml(receipt.submitted_at)}<br>
     sha256 ${escapeHtml(receipt.payload_sha256)}</p>`;
}
