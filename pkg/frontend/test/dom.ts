/** jsdom helpers: pixel geometry for the SVG plane and mouse dispatch.
 *
 * jsdom computes no layout, so getBoundingClientRect() on the plane is
 * stubbed to the viewBox size — client coordinates then equal viewBox
 * coordinates, which keeps the pixel↔rating mapping exact in tests.
 */

export const PLANE_RECT = { width: 560, height: 460 };

export function stubPlaneRect(svg: SVGSVGElement): void {
  svg.getBoundingClientRect = () =>
    ({
      x: 0,
      y: 0,
      left: 0,
      top: 0,
      right: PLANE_RECT.width,
      bottom: PLANE_RECT.height,
      width: PLANE_RECT.width,
      height: PLANE_RECT.height,
      toJSON: () => ({}),
    }) as DOMRect;
}

export function mouse(
  target: EventTarget,
  type: string,
  clientX = 0,
  clientY = 0,
): void {
  target.dispatchEvent(
    new MouseEvent(type, { clientX, clientY, bubbles: true, cancelable: true }),
  );
}

export function click(target: EventTarget, clientX = 0, clientY = 0): void {
  mouse(target, "click", clientX, clientY);
}

/** Wait until `probe` stops throwing (assertions inside settle as the
 * board's async handlers complete). */
export async function until(
  probe: () => void | Promise<void>,
  timeoutMs = 10_000,
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  for (;;) {
    try {
      await probe();
      return;
    } catch (exc) {
      if (Date.now() > deadline) {
        throw exc;
      }
      await new Promise((resolve) => setTimeout(resolve, 25));
    }
  }
}
