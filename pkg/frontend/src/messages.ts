/**
 * Drill-down message list: the raw accepted messages behind one
 * (city, syndrome, hour) count, rendered exactly as the API returned
 * them (same order, same texts).
 */
import type { ApiMessage } from "./api.js";
import { escapeHtml } from "./html.js";

export function renderMessageList(messages: ApiMessage[]): string {
  if (messages.length === 0) {
    return `<p class="no-messages">No messages recorded for this hour.</p>`;
  }
  const items = messages.map((m) => {
    const time = m.timestamp.slice(11, 19);
    return (
      `<li class="message" data-id="${escapeHtml(m.id)}">` +
      `<time datetime="${escapeHtml(m.timestamp)}">${escapeHtml(time)}</time>` +
      `<span class="message-text">${escapeHtml(m.text)}</span>` +
      `</li>`
    );
  });
  return `<ul class="messages">${items.join("")}</ul>`;
}

/** Extract data-id attributes in render order (test helper). */
export function renderedIds(html: string): string[] {
  const ids: string[] = [];
  const re = /<li class="message" data-id="([^"]*)"/g;
  let m: RegExpExecArray | null;
  while ((m = re.exec(html)) !== null) {
    ids.push(m[1]);
  }
  return ids;
}
