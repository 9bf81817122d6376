// @vitest-environment jsdom
import { describe, expect, it } from 'vitest';

import { clear, el } from '../src/dom.js';

describe('el', () => {
  it('sets string attributes and nests children', () => {
    const node = el('div', { class: 'box', 'data-role': 'x' }, 'hi ', el('b', {}, 'there'));
    expect(node.className).toBe('box');
    expect(node.getAttribute('data-role')).toBe('x');
    expect(node.textContent).toBe('hi there');
  });

  it('wires function attributes as listeners', () => {
    let hits = 0;
    const button = el('button', { onclick: () => { hits += 1; } }, 'go');
    button.click();
    button.click();
    expect(hits).toBe(2);
  });

  it('applies boolean attributes as properties too', () => {
    const box = el('input', { type: 'checkbox', checked: true }) as HTMLInputElement;
    expect(box.checked).toBe(true);
  });

  it('skips null and undefined children', () => {
    const node = el('p', {}, null, 'a', undefined, 'b');
    expect(node.textContent).toBe('ab');
  });
});

describe('clear', () => {
  it('empties a node', () => {
    const node = el('div', {}, el('span', {}, 'a'), 'b');
    clear(node);
    expect(node.childNodes.length).toBe(0);
  });
});
