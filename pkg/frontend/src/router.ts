export type Route =
  | "home"
  | "examine"
  | "result"
  | "centers"
  | "login"
  | "dashboard";

/**
 * Hash -> route decision. Dashboard is unreachable without a stored token;
 * the guard redirects to the login screen instead.
 */
export function resolveRoute(hash: string, hasToken: boolean): Route {
  const path = (hash.startsWith("#") ? hash.slice(1) : hash) || "/";
  if (path === "/" || path === "") return "home";
  if (path.startsWith("/examine")) return "examine";
  if (path.startsWith("/result")) return "result";
  if (path.startsWith("/centers")) return "centers";
  if (path.startsWith("/login")) return "login";
  if (path.startsWith("/dashboard")) return hasToken ? "dashboard" : "login";
  return "home";
}

/** Route chosen after a classification comes back. */
export function verdictRoute(prediction: string, positiveClass: string): "infected" | "uninfected" {
  return prediction === positiveClass ? "infected" : "uninfected";
}

export function navigate(route: Route): void {
  window.location.hash = route === "home" ? "/" : `/${route}`;
}
