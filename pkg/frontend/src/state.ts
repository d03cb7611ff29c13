// View state for the alpha-steering loop: a selected sweep point and an
// optional comparison pin. The slider snaps to the sweep grid because
// interpolated solutions do not exist.

import type { SweepPayload, SweepPoint } from "./api.js";

export class StateError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "StateError";
  }
}

// Nearest grid alpha; ties go to the lower alpha, mirroring the
// service's own snapping so a /solution fetch returns the shown point.
export function snapToGrid(alphas: readonly number[], raw: number): number {
  let best: number | null = null;
  for (const alpha of alphas) {
    if (
      best === null ||
      Math.abs(alpha - raw) < Math.abs(best - raw) ||
      (Math.abs(alpha - raw) === Math.abs(best - raw) && alpha < best)
    ) {
      best = alpha;
    }
  }
  if (best === null) {
    throw new StateError("alpha grid is empty");
  }
  return best;
}

export class ViewState {
  private selected: number;
  private pinned: number | null = null;

  constructor(
    readonly sweep: SweepPayload,
    initialAlpha = 0,
  ) {
    if (sweep.points.length === 0) {
      throw new StateError("sweep has no points");
    }
    this.selected = snapToGrid(this.grid(), initialAlpha);
  }

  grid(): number[] {
    return this.sweep.points.map((p) => p.alpha);
  }

  get selectedAlpha(): number {
    return this.selected;
  }

  get pinnedAlpha(): number | null {
    return this.pinned;
  }

  // Snap and select. A pin sitting on the landing point is cleared so
  // the pin never equals the selection.
  selectAlpha(raw: number): number {
    this.selected = snapToGrid(this.grid(), raw);
    if (this.pinned === this.selected) {
      this.pinned = null;
    }
    return this.selected;
  }

  // Snap and pin a comparison point; pinning the selected point itself
  // is rejected.
  pinAlpha(raw: number): number {
    const snapped = snapToGrid(this.grid(), raw);
    if (snapped === this.selected) {
      throw new StateError(`pin equals the selected point (alpha = ${snapped})`);
    }
    this.pinned = snapped;
    return snapped;
  }

  clearPin(): void {
    this.pinned = null;
  }

  selectedPoint(): SweepPoint {
    return this.pointAt(this.selected);
  }

  pinnedPoint(): SweepPoint | null {
    return this.pinned === null ? null : this.pointAt(this.pinned);
  }

  private pointAt(alpha: number): SweepPoint {
    const matches = this.sweep.points.filter((p) => p.alpha === alpha);
    if (matches.length !== 1) {
      throw new StateError(`alpha ${alpha} maps to ${matches.length} sweep points`);
    }
    return matches[0] as SweepPoint;
  }
}
