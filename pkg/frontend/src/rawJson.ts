/**
 * JSON parser that keeps number literals as their exact source text.
 *
 * JSON.parse would re-format numbers (e.g. "1.0" becomes 1, rendering as
 * "1"), which breaks the rule that every figure shown in the UI is
 * byte-identical to the service response. Numbers parse into RawNum nodes
 * carrying both the verbatim token and its numeric value; display code uses
 * `raw`, comparisons use `value`.
 */

export interface RawNum {
  kind: 'number';
  raw: string;
  value: number;
}

export type JsonValue = null | boolean | string | RawNum | JsonValue[] | JsonObject;

export interface JsonObject {
  [key: string]: JsonValue;
}

export function isRawNum(v: JsonValue): v is RawNum {
  // A parsed object can never hold a plain JS number, so `typeof value`
  // cannot be spoofed by payload data shaped like {"kind": "number"}.
  return (
    typeof v === 'object' &&
    v !== null &&
    !Array.isArray(v) &&
    (v as RawNum).kind === 'number' &&
    typeof (v as RawNum).value === 'number' &&
    typeof (v as RawNum).raw === 'string'
  );
}

const NUMBER_RE = /^-?(?:0|[1-9]\d*)(?:\.\d+)?(?:[eE][+-]\d+|[eE]\d+)?/;

class Parser {
  private pos = 0;

  constructor(private readonly text: string) {}

  parse(): JsonValue {
    const value = this.parseValue();
    this.skipWhitespace();
    if (this.pos !== this.text.length) {
      throw this.error('trailing characters');
    }
    return value;
  }

  private error(message: string): Error {
    return new Error(`rawJson: ${message} at offset ${this.pos}`);
  }

  private skipWhitespace(): void {
    while (this.pos < this.text.length && ' \t\n\r'.includes(this.text[this.pos])) {
      this.pos++;
    }
  }

  private parseValue(): JsonValue {
    this.skipWhitespace();
    const ch = this.text[this.pos];
    if (ch === undefined) throw this.error('unexpected end of input');
    if (ch === '{') return this.parseObject();
    if (ch === '[') return this.parseArray();
    if (ch === '"') return this.parseString();
    if (ch === 't' || ch === 'f') return this.parseBoolean();
    if (ch === 'n') return this.parseNull();
    return this.parseNumber();
  }

  private expect(ch: string): void {
    if (this.text[this.pos] !== ch) throw this.error(`expected '${ch}'`);
    this.pos++;
  }

  private parseObject(): JsonObject {
    this.expect('{');
    const out: JsonObject = {};
    this.skipWhitespace();
    if (this.text[this.pos] === '}') {
      this.pos++;
      return out;
    }
    for (;;) {
      this.skipWhitespace();
      const key = this.parseString();
      this.skipWhitespace();
      this.expect(':');
      out[key] = this.parseValue();
      this.skipWhitespace();
      if (this.text[this.pos] === ',') {
        this.pos++;
        continue;
      }
      this.expect('}');
      return out;
    }
  }

  private parseArray(): JsonValue[] {
    this.expect('[');
    const out: JsonValue[] = [];
    this.skipWhitespace();
    if (this.text[this.pos] === ']') {
      this.pos++;
      return out;
    }
    for (;;) {
      out.push(this.parseValue());
      this.skipWhitespace();
      if (this.text[this.pos] === ',') {
        this.pos++;
        continue;
      }
      this.expect(']');
      return out;
    }
  }

  private parseString(): string {
    this.expect('"');
    let out = '';
    for (;;) {
      const ch = this.text[this.pos];
      if (ch === undefined) throw this.error('unterminated string');
      this.pos++;
      if (ch === '"') return out;
      if (ch !== '\\') {
        out += ch;
        continue;
      }
      const esc = this.text[this.pos];
      this.pos++;
      switch (esc) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case '/': out += '/'; break;
        case 'b': out += '\b'; break;
        case 'f': out += '\f'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 't': out += '\t'; break;
        case 'u': {
          const hex = this.text.slice(this.pos, this.pos + 4);
          if (!/^[0-9a-fA-F]{4}$/.test(hex)) throw this.error('bad unicode escape');
          out += String.fromCharCode(parseInt(hex, 16));
          this.pos += 4;
          break;
        }
        default:
          throw this.error(`bad escape '\\${esc}'`);
      }
    }
  }

  private parseBoolean(): boolean {
    if (this.text.startsWith('true', this.pos)) {
      this.pos += 4;
      return true;
    }
    if (this.text.startsWith('false', this.pos)) {
      this.pos += 5;
      return false;
    }
    throw this.error('bad literal');
  }

  private parseNull(): null {
    if (this.text.startsWith('null', this.pos)) {
      this.pos += 4;
      return null;
    }
    throw this.error('bad literal');
  }

  private parseNumber(): RawNum {
    const match = NUMBER_RE.exec(this.text.slice(this.pos));
    if (!match) throw this.error('bad number');
    const raw = match[0];
    this.pos += raw.length;
    return { kind: 'number', raw, value: Number(raw) };
  }
}

export function parseRawJson(text: string): JsonValue {
  return new Parser(text).parse();
}

/** Numeric value of a node that must be a number. */
export function num(v: JsonValue): number {
  if (!isRawNum(v)) throw new Error('rawJson: expected a number node');
  return v.value;
}
