/** Rolling time-series buffers backing the strip charts. */

export interface Sample {
  t: number;
  value: number;
}

export class RollingBuffer {
  readonly windowS: number;
  private samples: Sample[] = [];

  constructor(windowS = 120) {
    this.windowS = windowS;
  }

  /** Append a sample; out-of-order times reset the buffer (mission reload). */
  push(t: number, value: number): void {
    const last = this.samples[this.samples.length - 1];
    if (last !== undefined && t <= last.t) {
      this.samples = [];
    }
    this.samples.push({ t, value });
    const cutoff = t - this.windowS;
    let drop = 0;
    while (drop < this.samples.length && this.samples[drop]!.t < cutoff) drop++;
    if (drop > 0) this.samples = this.samples.slice(drop);
  }

  get length(): number {
    return this.samples.length;
  }

  all(): readonly Sample[] {
    return this.samples;
  }

  latest(): Sample | undefined {
    return this.samples[this.samples.length - 1];
  }

  /** [min, max] over the window, padded when flat so charts keep a span. */
  range(): [number, number] {
    if (this.samples.length === 0) return [0, 1];
    let lo = Infinity;
    let hi = -Infinity;
    for (const s of this.samples) {
      if (s.value < lo) lo = s.value;
      if (s.value > hi) hi = s.value;
    }
    if (hi - lo < 1e-9) {
      lo -= 0.5;
      hi += 0.5;
    }
    return [lo, hi];
  }
}
