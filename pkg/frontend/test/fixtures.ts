export const HEADER = "p,G,I,ratio_num,ratio_den,t_max,same_t,m_at_max,scaled";
export const COMMENT = "# scaled = G / (sqrt(p) * log p) with the natural logarithm";

export const SMALL_CSV = [
  COMMENT,
  HEADER,
  "5,2,2,1,1,0,1,1,0.555634",
  "7,2,2,1,1,-2;1;2,1,1,0.388527",
  "11,2,3,2,3,-2;2,0,1;2,0.251423",
  "13,3,4,3,4,3,1,1,0.324566",
  "",
].join("\n");

export const EMPTY_CSV = [COMMENT, HEADER, ""].join("\n");
