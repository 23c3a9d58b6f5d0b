// Utility helpers.
const a = `template with // no comment`;
const b = `multi
line /* still template */
end`; // after template
const c = "x" + 'y'; /* block */
/* multi
   line
   block */
