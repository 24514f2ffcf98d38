/** Display formatting. The UI never computes statistics, it only formats
 * numbers the service already provides. */

export function percentWhole(fraction: number): string {
  return `${Math.round(fraction * 100)}%`;
}

export function percentOneDecimal(fraction: number): string {
  return `${(fraction * 100).toFixed(1)}%`;
}

export function kilometres(km: number): string {
  return km < 10 ? `${km.toFixed(1)} km` : `${Math.round(km)} km`;
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
